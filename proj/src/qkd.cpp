#include "haplink/qkd.hpp"

#include <cmath>
#include <limits>

#include "haplink/budget.hpp"
#include "haplink/errors.hpp"
#include "haplink/scenario.hpp"
#include "haplink/units.hpp"

namespace haplink {

double background_power_w(const SkyRadiance& sky, const ReceiverOptics& rx) {
    const FieldOfView fov = receiver_fov(rx);
    return sky.brightness() * fov.solid_sr * rx.collecting_area_m2() *
           rx.filter_bandwidth_um;
}

double noise_count_rate_hz(const SkyRadiance& sky, const ReceiverOptics& rx,
                           const DetectorParams& det, const DvProtocolParams& dv,
                           double wavelength_m) {
    const double gate = dv.gate_factor();
    if (gate > 1.0)
        throw ConfigError("time gate exceeds the pulse period: "
                          "gate_width_s * repetition_rate_hz > 1");
    const double sky_photons_hz =
        background_power_w(sky, rx) / photon_energy_J(wavelength_m);
    return sky_photons_hz * gate * det.efficiency + det.dark_rate_hz * gate;
}

double signal_count_rate_hz(const DvProtocolParams& dv, const DetectorParams& det,
                            double channel_loss_db) {
    const double raw = dv.repetition_rate_hz * dv.mean_photon_number() *
                       transmission_from_loss_db(channel_loss_db) * det.efficiency;
    return raw / (1.0 + raw * det.dead_time_s);
}

double qber(double signal_hz, double noise_hz) {
    if (signal_hz < 0.0 || noise_hz < 0.0)
        throw DomainError("count rates must be non-negative");
    if (signal_hz == 0.0 && noise_hz == 0.0)
        throw DomainError("QBER undefined: no signal and no noise counts");
    return 0.5 * noise_hz / (signal_hz + noise_hz);
}

double max_tolerable_loss_db(const SkyRadiance& sky, const ReceiverOptics& rx,
                             const DetectorParams& det, const DvProtocolParams& dv,
                             double wavelength_m) {
    const double noise = noise_count_rate_hz(sky, rx, det, dv, wavelength_m);
    if (noise == 0.0)
        return std::numeric_limits<double>::infinity();
    // QBER = limit <=> signal = noise * (0.5 - limit) / limit, inverted on the
    // unsaturated count chain.
    const double signal_needed = noise * (0.5 - dv.qber_limit) / dv.qber_limit;
    const double detected_at_zero_loss =
        dv.repetition_rate_hz * dv.mean_photon_number() * det.efficiency;
    return 10.0 * std::log10(detected_at_zero_loss / signal_needed);
}

double cv_snr(const CvProtocolParams& cv, double channel_loss_db) {
    const double t = transmission_from_loss_db(channel_loss_db);
    return t * cv.modulation_variance_snu /
           (1.0 + cv.electronic_noise_snu + t * cv.excess_noise_snu);
}

double cv_threshold_loss_db(const CvProtocolParams& cv) {
    const double s = cv.snr_threshold;
    const double denom = cv.modulation_variance_snu - s * cv.excess_noise_snu;
    if (denom <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double t = s * (1.0 + cv.electronic_noise_snu) / denom;
    return -10.0 * std::log10(t);
}

FeasibilityResult dv_feasibility(const Scenario& s, double channel_loss_db) {
    FeasibilityResult r;
    r.protocol = Protocol::Dv;
    r.signal_count_hz = signal_count_rate_hz(s.dv, s.detector, channel_loss_db);
    r.noise_count_hz = noise_count_rate_hz(s.sky, s.receiver, s.detector, s.dv,
                                           s.transmitter.wavelength_m);
    r.metric = qber(r.signal_count_hz, r.noise_count_hz);
    r.feasible = r.metric <= s.dv.qber_limit;
    r.margin_db = max_tolerable_loss_db(s.sky, s.receiver, s.detector, s.dv,
                                        s.transmitter.wavelength_m) -
                  channel_loss_db;
    return r;
}

FeasibilityResult cv_feasibility(const Scenario& s, double channel_loss_db) {
    FeasibilityResult r;
    r.protocol = Protocol::Cv;
    r.metric = cv_snr(s.cv, channel_loss_db);
    r.feasible = r.metric >= s.cv.snr_threshold;
    r.margin_db = cv_threshold_loss_db(s.cv) - channel_loss_db;
    return r;
}

DivergenceSolution max_feasible_divergence(const Scenario& s, Protocol protocol) {
    const double target_db =
        protocol == Protocol::Dv
            ? max_tolerable_loss_db(s.sky, s.receiver, s.detector, s.dv,
                                    s.transmitter.wavelength_m)
            : cv_threshold_loss_db(s.cv);
    if (std::isinf(target_db) && target_db > 0.0)
        return {SolveStatus::Unbounded, std::numeric_limits<double>::infinity()};

    const auto loss_at = [&](double divergence_rad) {
        Scenario probe = s;
        probe.transmitter.divergence_override_rad = divergence_rad;
        return total_loss(probe, s.method).channel_total_db;
    };

    // The method's native divergence is the smallest the beam can be.
    TransmitterOptics native = s.transmitter;
    native.divergence_override_rad.reset();
    const double theta_min = s.method == Method::Method1
                                 ? diffraction_divergence_rad(native)
                                 : nanobob_divergence_rad(native);
    if (loss_at(theta_min) > target_db)
        return {SolveStatus::NoSolution, 0.0};

    double lo = theta_min;
    double hi = theta_min;
    for (int i = 0; i < 200 && loss_at(hi) <= target_db; ++i)
        hi *= 2.0;
    if (loss_at(hi) <= target_db)
        return {SolveStatus::Unbounded, std::numeric_limits<double>::infinity()};

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (loss_at(mid) <= target_db)
            lo = mid;
        else
            hi = mid;
    }
    return {SolveStatus::Found, lo};
}

} // namespace haplink
