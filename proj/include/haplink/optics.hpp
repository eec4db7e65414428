#pragma once

#include <optional>

namespace haplink {

/// Transmitter telescope and source.
///
/// divergence_override_rad models a deliberately diverged beam: when set it
/// replaces the diffraction-limited divergence in both link-budget methods.
/// classical_power_w is carried as metadata only; photon-counting rates are
/// driven by the protocol's mean photon numbers.
struct TransmitterOptics {
    double aperture_m{0.1};
    double wavelength_m{1550e-9};
    std::optional<double> divergence_override_rad{};
    double classical_power_w{1e-3};

    bool operator==(const TransmitterOptics&) const = default;
};

/// Receiver telescope, relay optics, detector plane and spectral filter.
///
/// The field of view is resolved from the two-lens focal chain when both
/// focal lengths are supplied; otherwise fov_solid_angle_sr is used directly.
/// The default solid angle is a calibration constant (see qkd tests).
struct ReceiverOptics {
    double aperture_m{0.4};
    double detector_diameter_m{64.5e-6};
    std::optional<double> telescope_focal_length_m{};
    std::optional<double> relay_focal_length_m{};
    std::optional<double> lens_separation_m{};
    double filter_bandwidth_um{1e-4};
    std::optional<double> fov_solid_angle_sr{1.02e-10};

    bool has_focal_chain() const {
        return telescope_focal_length_m.has_value() && relay_focal_length_m.has_value();
    }
    /// Collecting area of the telescope aperture, pi * (D/2)^2.
    double collecting_area_m2() const;

    bool operator==(const ReceiverOptics&) const = default;
};

/// Pointing jitter of the PAT system. include_beam_wander folds the
/// turbulence-induced beam wander into the jitter in quadrature (diagnostic
/// mode, off by default).
struct PointingModel {
    double jitter_rad{5e-6};
    bool include_beam_wander{false};

    bool operator==(const PointingModel&) const = default;
};

struct FieldOfView {
    double planar_rad{};  ///< full opening angle, 2*atan(D/2F)
    double solid_sr{};    ///< small-cone solid angle, pi*(planar/2)^2
};

/// Diffraction-limited full divergence, 1.22 * lambda / D_tx,
/// or the override when one is set.
double diffraction_divergence_rad(const TransmitterOptics& tx);

/// Conservative divergence estimate, 2.44 * lambda / D_tx (twice the
/// diffraction-limited value), or the override when one is set.
double nanobob_divergence_rad(const TransmitterOptics& tx);

/// Turbulence-included divergence, 2.1 * lambda / r0.
double turbulent_divergence_rad(double wavelength_m, double fried_parameter_m);

/// Effective focal length of the two-lens chain, f1*f2 / (f1 + f2 - d).
/// Throws SingularConfigError when the denominator vanishes and ConfigError
/// when no focal chain is configured. A missing lens separation counts as 0.
double effective_focal_length_m(const ReceiverOptics& rx);

/// Receiver field of view. Focal chain when available, solid-angle override
/// otherwise (the planar angle is then back-converted from the small-cone
/// relation). Throws ConfigError when neither is configured.
FieldOfView receiver_fov(const ReceiverOptics& rx);

/**
 * Misalignment loss in dB for a given beam divergence.
 *
 * The transmission fraction exp(-8 (theta_j/theta)^2) is converted to dB as
 * -10*log10, i.e. (80/ln 10) * (theta_j/theta)^2, so that it can be summed
 * with the other dB terms of the budget. Throws DomainError when the
 * divergence is not positive.
 */
double pointing_loss_db(const PointingModel& pointing, double divergence_rad);

/// Beam-centroid displacement variance at the receiver plane (m^2):
/// 0.54 * R^2 * (lambda/D_tx)^2 * (D_tx/r0)^(5/3). Diagnostic only; not a
/// term of either total-loss method.
double beam_wander_variance_m2(double los_m, const TransmitterOptics& tx,
                               double fried_parameter_m);

} // namespace haplink
