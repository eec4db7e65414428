#include "haplink/geometry.hpp"

#include <cmath>
#include <string>

#include "haplink/errors.hpp"
#include "haplink/units.hpp"

namespace haplink {

static void check_elevation(double elevation_deg) {
    if (!(elevation_deg > 0.0) || elevation_deg > 90.0)
        throw DomainError("elevation must be in (0, 90] degrees, got " +
                          std::to_string(elevation_deg));
}

double los_distance_m(const LinkGeometry& geom) {
    check_elevation(geom.elevation_deg);
    if (!(geom.hap_altitude_m > 0.0))
        throw DomainError("hap_altitude_m must be positive, got " +
                          std::to_string(geom.hap_altitude_m));
    return geom.hap_altitude_m / std::sin(deg_to_rad(geom.elevation_deg));
}

double slant_through_layer_m(const WeatherLayer& layer, double elevation_deg) {
    check_elevation(elevation_deg);
    if (!(layer.top_altitude_m > 0.0))
        throw DomainError("weather layer altitude must be positive, got " +
                          std::to_string(layer.top_altitude_m));
    return layer.top_altitude_m / std::sin(deg_to_rad(elevation_deg));
}

double ground_footprint_diameter_m(double tx_aperture_m, double los_m,
                                   double divergence_rad) {
    if (tx_aperture_m < 0.0 || los_m < 0.0 || divergence_rad < 0.0)
        throw DomainError("footprint inputs must be non-negative");
    return tx_aperture_m + los_m * divergence_rad;
}

} // namespace haplink
