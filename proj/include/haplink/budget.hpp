#pragma once

#include <string>

namespace haplink {

struct Scenario;

/// Internal losses of the receiver chain, kept out of the headline channel
/// total (they are accounted for on the detection side).
struct ReceiverLosses {
    double non_ideal_optics_db{3.0};
    double telescope_db{2.2};

    double total_db() const { return non_ideal_optics_db + telescope_db; }

    bool operator==(const ReceiverLosses&) const = default;
};

/// Fixed efficiency factors of the NanoBob budget.
struct NanoBobEfficiencies {
    double transmitter{0.8};
    double receiver{0.8};
    double pointing{0.8};

    bool operator==(const NanoBobEfficiencies&) const = default;
};

enum class Method { Method1, NanoBob };

std::string to_string(Method m);

/// Per-mechanism losses in dB plus totals under one method.
///
/// channel_total_db = pointing + geometric + molecular + weather +
/// fixed_atmospheric (summed in that order); system_total_db adds the
/// receiver losses. The geometric term is clamped at 0 dB inside the totals;
/// geometric_raw_db keeps the unclamped value for diagnostics.
struct LossBreakdown {
    Method method{Method::Method1};
    double pointing_db{};
    double geometric_db{};
    double geometric_raw_db{};
    double molecular_db{};
    double weather_db{};
    double fixed_atmospheric_db{};
    double receiver_db{};
    double channel_total_db{};
    double system_total_db{};
};

/// Beam-spreading loss, 20*log10((D_tx + R*theta) / D_rx), unclamped.
/// Throws DomainError on non-positive apertures or negative R/theta.
double geometric_loss_raw_db(double tx_aperture_m, double rx_aperture_m,
                             double los_m, double divergence_rad);

/// Method 1: L_p + L_geo + L_ma*R_LoS + L_w*R_w (+ L_rx in the system total).
/// Attenuation rates are dB/km; slant distances are converted here.
LossBreakdown method1_total(const Scenario& s);

/// NanoBob: 10*log10(R^2 (theta^2 + theta_atm^2) / (D_rx^2 Tt Tp Tr))
/// + L_atm + L_w*R_w (+ L_rx in the system total), with theta twice the
/// diffraction-limited divergence and theta_atm the turbulent divergence.
LossBreakdown nanobob_total(const Scenario& s);

LossBreakdown total_loss(const Scenario& s, Method method);

} // namespace haplink
