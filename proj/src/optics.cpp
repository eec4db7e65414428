#include "haplink/optics.hpp"

#include <cmath>
#include <numbers>

#include "haplink/errors.hpp"
#include "haplink/units.hpp"

namespace haplink {

double ReceiverOptics::collecting_area_m2() const {
    const double r = aperture_m / 2.0;
    return constants::pi * r * r;
}

double diffraction_divergence_rad(const TransmitterOptics& tx) {
    if (tx.divergence_override_rad)
        return *tx.divergence_override_rad;
    return 1.22 * tx.wavelength_m / tx.aperture_m;
}

double nanobob_divergence_rad(const TransmitterOptics& tx) {
    if (tx.divergence_override_rad)
        return *tx.divergence_override_rad;
    return 2.44 * tx.wavelength_m / tx.aperture_m;
}

double turbulent_divergence_rad(double wavelength_m, double fried_parameter_m) {
    if (!(fried_parameter_m > 0.0))
        throw DomainError("Fried parameter must be positive");
    return 2.1 * wavelength_m / fried_parameter_m;
}

double effective_focal_length_m(const ReceiverOptics& rx) {
    if (!rx.has_focal_chain())
        throw ConfigError("receiver focal chain not configured "
                          "(telescope_focal_length_m and relay_focal_length_m required)");
    const double f1 = *rx.telescope_focal_length_m;
    const double f2 = *rx.relay_focal_length_m;
    const double d = rx.lens_separation_m.value_or(0.0);
    const double denom = f1 + f2 - d;
    if (denom == 0.0)
        throw SingularConfigError("two-lens chain is singular: f1 + f2 - d = 0");
    return f1 * f2 / denom;
}

static double small_cone_solid_angle_sr(double planar_rad) {
    const double half = planar_rad / 2.0;
    return constants::pi * half * half;
}

FieldOfView receiver_fov(const ReceiverOptics& rx) {
    if (rx.has_focal_chain()) {
        const double focal = effective_focal_length_m(rx);
        const double planar = 2.0 * std::atan(rx.detector_diameter_m / (2.0 * focal));
        return FieldOfView{planar, small_cone_solid_angle_sr(planar)};
    }
    if (rx.fov_solid_angle_sr) {
        const double solid = *rx.fov_solid_angle_sr;
        const double planar = 2.0 * std::sqrt(solid / constants::pi);
        return FieldOfView{planar, solid};
    }
    throw ConfigError("receiver FoV unresolved: set the focal chain or fov_solid_angle_sr");
}

double pointing_loss_db(const PointingModel& pointing, double divergence_rad) {
    if (!(divergence_rad > 0.0))
        throw DomainError("pointing loss needs a positive beam divergence");
    const double ratio = pointing.jitter_rad / divergence_rad;
    return (80.0 / std::numbers::ln10) * ratio * ratio;
}

double beam_wander_variance_m2(double los_m, const TransmitterOptics& tx,
                               double fried_parameter_m) {
    if (!(los_m > 0.0) || !(fried_parameter_m > 0.0))
        throw DomainError("beam wander needs positive distance and Fried parameter");
    const double spread = tx.wavelength_m / tx.aperture_m;
    const double turb = std::pow(tx.aperture_m / fried_parameter_m, 5.0 / 3.0);
    return 0.54 * los_m * los_m * spread * spread * turb;
}

} // namespace haplink
