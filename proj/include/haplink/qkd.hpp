#pragma once

#include "haplink/atmosphere.hpp"
#include "haplink/optics.hpp"

namespace haplink {

struct Scenario;

/// Which mean photon number drives the transmitted count rate: the
/// pulse-average over signal and decoy states (default) or the signal
/// intensity alone.
enum class CountPhotonNumber { Average, SignalOnly };

/// Decoy-state BB84 protocol parameters.
struct DvProtocolParams {
    double repetition_rate_hz{5e8};
    double signal_mean_photon{0.5};
    double decoy_mean_photon{1.0};
    double signal_probability{0.8};
    double decoy_probability{0.2};
    double qber_limit{0.11};
    double gate_width_s{500e-12};
    CountPhotonNumber count_photon_number{CountPhotonNumber::Average};

    double mean_photon_number() const {
        if (count_photon_number == CountPhotonNumber::SignalOnly)
            return signal_mean_photon;
        return signal_probability * signal_mean_photon +
               decoy_probability * decoy_mean_photon;
    }

    /// Fraction of uncorrelated counts passing the time gate,
    /// gate_width * repetition_rate.
    double gate_factor() const { return gate_width_s * repetition_rate_hz; }

    bool operator==(const DvProtocolParams&) const = default;
};

/// Single-photon avalanche diode parameters.
struct DetectorParams {
    double efficiency{0.25};
    double dead_time_s{18e-6};
    double dark_rate_hz{500.0};
    double diameter_m{64.5e-6};

    bool operator==(const DetectorParams&) const = default;
};

/// Gaussian-modulated coherent-state protocol parameters, in shot-noise units.
struct CvProtocolParams {
    double modulation_variance_snu{10.0};
    double excess_noise_snu{0.03};
    double electronic_noise_snu{0.1};
    double snr_threshold{0.024};

    bool operator==(const CvProtocolParams&) const = default;
};

enum class Protocol { Dv, Cv };

/// Verdict for one protocol at one channel loss. metric is the QBER for DV
/// and the SNR for CV; margin_db is the distance (in channel loss) to the
/// protocol limit crossing.
struct FeasibilityResult {
    Protocol protocol{Protocol::Dv};
    double signal_count_hz{};
    double noise_count_hz{};
    double metric{};
    bool feasible{};
    double margin_db{};
};

/// Background optical power on the detector:
/// P_b = H_b * Omega_fov * A_rec * B, with B in um.
double background_power_w(const SkyRadiance& sky, const ReceiverOptics& rx);

/// Detected background count rate: sky photons through the time gate and the
/// detector efficiency, plus gated dark counts. Throws ConfigError when the
/// gate factor exceeds 1.
double noise_count_rate_hz(const SkyRadiance& sky, const ReceiverOptics& rx,
                           const DetectorParams& det, const DvProtocolParams& dv,
                           double wavelength_m);

/// Detected signal count rate at the given channel loss, dead-time saturated:
/// N/(1 + N*tau) with N = repetition * mu * 10^(-loss/10) * efficiency.
double signal_count_rate_hz(const DvProtocolParams& dv, const DetectorParams& det,
                            double channel_loss_db);

/// Background-only QBER model: random noise counts are erroneous half the
/// time, QBER = 0.5*noise / (signal + noise). Basis sifting scales signal and
/// noise identically and cancels. Throws DomainError when both rates are 0.
double qber(double signal_hz, double noise_hz);

/// Channel loss at which the QBER reaches the protocol limit (closed-form
/// inversion of the unsaturated count chain; saturation is negligible at the
/// threshold). Returns +infinity when there is no noise.
double max_tolerable_loss_db(const SkyRadiance& sky, const ReceiverOptics& rx,
                             const DetectorParams& det, const DvProtocolParams& dv,
                             double wavelength_m);

/// Homodyne SNR at the given channel loss:
/// T*V_sig / (1 + v_el + T*xi) with T = 10^(-loss/10).
double cv_snr(const CvProtocolParams& cv, double channel_loss_db);

/// Channel loss at which the SNR crosses the threshold. May be negative
/// (infeasible at any physical loss) or +infinity (threshold unreachable
/// from above, zero signal).
double cv_threshold_loss_db(const CvProtocolParams& cv);

FeasibilityResult dv_feasibility(const Scenario& s, double channel_loss_db);
FeasibilityResult cv_feasibility(const Scenario& s, double channel_loss_db);

enum class SolveStatus { Found, NoSolution, Unbounded };

struct DivergenceSolution {
    SolveStatus status{SolveStatus::NoSolution};
    double divergence_rad{};
};

/// Largest divergence override keeping the scenario feasible under the given
/// protocol, found by bisection on the channel loss of the scenario's method.
/// NoSolution when the link is already infeasible at the method's native
/// (un-overridden) divergence; Unbounded when the loss limit is infinite.
DivergenceSolution max_feasible_divergence(const Scenario& s, Protocol protocol);

} // namespace haplink
