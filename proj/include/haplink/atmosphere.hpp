#pragma once

#include <map>
#include <optional>
#include <string>

#include "haplink/geometry.hpp"

namespace haplink {

/// Tabulated molecular absorption rates, keyed by wavelength in nm.
/// No interpolation: a lookup away from every tabulated wavelength fails.
struct MolecularAbsorptionTable {
    std::map<double, double> db_per_km_by_nm{
        {550.0, 0.13}, {690.0, 0.01}, {850.0, 0.41}, {1550.0, 0.01}};

    bool operator==(const MolecularAbsorptionTable&) const = default;
};

/// Rate in dB/km for the given wavelength. Keys are matched within 1e-6 nm to
/// absorb unit-conversion noise; anything farther throws MissingEntryError.
double molecular_rate_db_per_km(const MolecularAbsorptionTable& table,
                                double wavelength_nm);

enum class WeatherKind { Clear, Fog, Rain, Snow };

/// Weather along the low part of the slant path. Visibility is required for
/// fog/rain/snow; the layer altitude defaults to 500 m for fog and 5 km for
/// rain and snow when not set explicitly.
struct WeatherCondition {
    WeatherKind kind{WeatherKind::Clear};
    std::optional<double> visibility_km{};
    std::optional<double> layer_altitude_m{};

    double resolved_layer_altitude_m() const;

    bool operator==(const WeatherCondition&) const = default;
};

/// Size-distribution coefficient of scattering for fog:
///   p = 1.6 (V >= 50), 1.3 (6 <= V < 50), 0.585 V^(1/3) (V < 6).
/// Boundaries are assigned to the upper branch.
double scattering_size_coefficient(double visibility_km);

/**
 * Weather attenuation rate in dB/km.
 *
 *   clear: 0
 *   fog:   3.91/V * (lambda/550)^(-p), lambda in nm, V in km
 *   snow:  58/V
 *   rain:  2.8/V
 *
 * Throws DomainError when a non-clear condition has visibility <= 0 or unset.
 */
double weather_rate_db_per_km(const WeatherCondition& cond, double wavelength_nm);

enum class SkyPreset { DayCloud, DayHazy, DayClear, FullMoon, NewMoon, Moonless };

std::string to_string(SkyPreset p);

/// Sky brightness in W m^-2 sr^-1 um^-1, either one of the six presets or a
/// custom value. Light pollution is an additive term in the same units.
struct SkyRadiance {
    std::optional<SkyPreset> preset{SkyPreset::Moonless};
    std::optional<double> custom_brightness{};
    double light_pollution{0.0};

    /// Preset or custom value plus the light-pollution term.
    double brightness() const;

    static double preset_brightness(SkyPreset p);
    static SkyRadiance from_preset(SkyPreset p) { return SkyRadiance{p, {}, 0.0}; }

    bool operator==(const SkyRadiance&) const = default;
};

/// Turbulence strength and the fixed clear-air attenuation used by the
/// NanoBob budget (Rayleigh scattering and absorption).
struct TurbulenceModel {
    double fried_parameter_m{0.2};
    double fixed_atmospheric_loss_db{3.0};

    bool operator==(const TurbulenceModel&) const = default;
};

} // namespace haplink
