#include "haplink/budget.hpp"

#include <algorithm>
#include <cmath>

#include "haplink/errors.hpp"
#include "haplink/scenario.hpp"
#include "haplink/units.hpp"

namespace haplink {

std::string to_string(Method m) {
    return m == Method::Method1 ? "method1" : "nanobob";
}

double geometric_loss_raw_db(double tx_aperture_m, double rx_aperture_m,
                             double los_m, double divergence_rad) {
    if (!(tx_aperture_m > 0.0) || !(rx_aperture_m > 0.0))
        throw DomainError("apertures must be positive");
    if (los_m < 0.0 || divergence_rad < 0.0)
        throw DomainError("distance and divergence must be non-negative");
    const double spot_m = tx_aperture_m + los_m * divergence_rad;
    return 20.0 * std::log10(spot_m / rx_aperture_m);
}

/// Weather term L_w * R_w in dB, zero under a clear sky.
static double weather_term_db(const Scenario& s) {
    if (s.weather.kind == WeatherKind::Clear)
        return 0.0;
    const double rate = weather_rate_db_per_km(s.weather, s.transmitter.wavelength_m * 1e9);
    const WeatherLayer layer{s.weather.resolved_layer_altitude_m()};
    const double slant_km = slant_through_layer_m(layer, s.geometry.elevation_deg) / 1000.0;
    return rate * slant_km;
}

static LossBreakdown finish(LossBreakdown b, const ReceiverLosses& rx) {
    b.receiver_db = rx.total_db();
    b.channel_total_db = b.pointing_db + b.geometric_db + b.molecular_db +
                         b.weather_db + b.fixed_atmospheric_db;
    b.system_total_db = b.channel_total_db + b.receiver_db;
    return b;
}

LossBreakdown method1_total(const Scenario& s) {
    const double los = los_distance_m(s.geometry);
    const double divergence = diffraction_divergence_rad(s.transmitter);

    PointingModel pointing = s.pointing;
    if (s.pointing.include_beam_wander) {
        const double wander_rms_m = std::sqrt(
            beam_wander_variance_m2(los, s.transmitter, s.turbulence.fried_parameter_m));
        pointing.jitter_rad = std::hypot(s.pointing.jitter_rad, wander_rms_m / los);
    }

    LossBreakdown b;
    b.method = Method::Method1;
    b.pointing_db = pointing_loss_db(pointing, divergence);
    b.geometric_raw_db = geometric_loss_raw_db(s.transmitter.aperture_m,
                                               s.receiver.aperture_m, los, divergence);
    b.geometric_db = std::max(0.0, b.geometric_raw_db);
    b.molecular_db = molecular_rate_db_per_km(s.molecular_table,
                                              s.transmitter.wavelength_m * 1e9) *
                     (los / 1000.0);
    b.weather_db = weather_term_db(s);
    b.fixed_atmospheric_db = 0.0;
    return finish(b, s.receiver_losses);
}

LossBreakdown nanobob_total(const Scenario& s) {
    const double los = los_distance_m(s.geometry);
    const double divergence = nanobob_divergence_rad(s.transmitter);
    const double turb = turbulent_divergence_rad(s.transmitter.wavelength_m,
                                                 s.turbulence.fried_parameter_m);
    const NanoBobEfficiencies& eff = s.nanobob_efficiencies;
    const double d_rx = s.receiver.aperture_m;

    // Spreading over the aperture, derated by the three fixed efficiencies
    // (denominator is the product D_rx^2 * Tt * Tp * Tr).
    const double numerator = los * los * (divergence * divergence + turb * turb);
    const double denominator = d_rx * d_rx * eff.transmitter * eff.pointing * eff.receiver;

    LossBreakdown b;
    b.method = Method::NanoBob;
    b.geometric_raw_db = 10.0 * std::log10(numerator / denominator);
    b.geometric_db = std::max(0.0, b.geometric_raw_db);
    b.pointing_db = 0.0;
    b.molecular_db = 0.0;
    b.weather_db = weather_term_db(s);
    b.fixed_atmospheric_db = s.turbulence.fixed_atmospheric_loss_db;
    return finish(b, s.receiver_losses);
}

LossBreakdown total_loss(const Scenario& s, Method method) {
    return method == Method::Method1 ? method1_total(s) : nanobob_total(s);
}

} // namespace haplink
