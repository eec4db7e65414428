#pragma once

#include <cmath>
#include <numbers>

namespace haplink {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double light_speed_m_s = 299792458.0;
} // namespace constants

inline double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

/// Power transmission fraction of a loss in dB.
inline double transmission_from_loss_db(double loss_db) {
    return std::pow(10.0, -loss_db / 10.0);
}

/// Energy of one photon at the given wavelength (J).
inline double photon_energy_J(double wavelength_m) {
    return constants::planck_J_s * constants::light_speed_m_s / wavelength_m;
}

} // namespace haplink
