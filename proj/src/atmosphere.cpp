#include "haplink/atmosphere.hpp"

#include <cmath>
#include <string>

#include "haplink/errors.hpp"

namespace haplink {

double molecular_rate_db_per_km(const MolecularAbsorptionTable& table,
                                double wavelength_nm) {
    // Tolerant key match: 1e-6 nm absorbs float noise from unit conversion
    // while still rejecting any wavelength the table does not carry.
    constexpr double tol_nm = 1e-6;
    auto it = table.db_per_km_by_nm.lower_bound(wavelength_nm - tol_nm);
    if (it != table.db_per_km_by_nm.end() &&
        std::abs(it->first - wavelength_nm) <= tol_nm)
        return it->second;
    throw MissingEntryError("no molecular absorption entry at " +
                            std::to_string(wavelength_nm) + " nm");
}

double WeatherCondition::resolved_layer_altitude_m() const {
    if (layer_altitude_m)
        return *layer_altitude_m;
    return kind == WeatherKind::Fog ? 500.0 : 5000.0;
}

double scattering_size_coefficient(double visibility_km) {
    if (!(visibility_km > 0.0))
        throw DomainError("visibility must be positive");
    if (visibility_km >= 50.0)
        return 1.6;
    if (visibility_km >= 6.0)
        return 1.3;
    return 0.585 * std::cbrt(visibility_km);
}

double weather_rate_db_per_km(const WeatherCondition& cond, double wavelength_nm) {
    if (cond.kind == WeatherKind::Clear)
        return 0.0;
    if (!cond.visibility_km || !(*cond.visibility_km > 0.0))
        throw DomainError("fog/rain/snow need a positive visibility_km");
    const double v = *cond.visibility_km;
    switch (cond.kind) {
    case WeatherKind::Fog: {
        const double p = scattering_size_coefficient(v);
        return 3.91 / v * std::pow(wavelength_nm / 550.0, -p);
    }
    case WeatherKind::Snow:
        return 58.0 / v;
    case WeatherKind::Rain:
        return 2.8 / v;
    case WeatherKind::Clear:
        break;
    }
    return 0.0;
}

std::string to_string(SkyPreset p) {
    switch (p) {
    case SkyPreset::DayCloud: return "day_cloud";
    case SkyPreset::DayHazy:  return "day_hazy";
    case SkyPreset::DayClear: return "day_clear";
    case SkyPreset::FullMoon: return "full_moon";
    case SkyPreset::NewMoon:  return "new_moon";
    case SkyPreset::Moonless: return "moonless";
    }
    return "moonless";
}

double SkyRadiance::preset_brightness(SkyPreset p) {
    switch (p) {
    case SkyPreset::DayCloud: return 150.0;
    case SkyPreset::DayHazy:  return 15.0;
    case SkyPreset::DayClear: return 1.5;
    case SkyPreset::FullMoon: return 1.5e-3;
    case SkyPreset::NewMoon:  return 1.5e-4;
    case SkyPreset::Moonless: return 1.5e-5;
    }
    throw DomainError("unknown sky preset");
}

double SkyRadiance::brightness() const {
    double base = 0.0;
    if (preset)
        base = preset_brightness(*preset);
    else if (custom_brightness)
        base = *custom_brightness;
    else
        throw ConfigError("sky radiance needs a preset or a custom brightness");
    return base + light_pollution;
}

} // namespace haplink
