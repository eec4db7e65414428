#pragma once

namespace haplink {

/// Platform-to-ground link geometry. The elevation angle is taken in degrees
/// at this boundary and converted to radians internally.
struct LinkGeometry {
    double hap_altitude_m{20000.0};
    double elevation_deg{90.0};

    bool operator==(const LinkGeometry&) const = default;
};

/// A weather layer extending from the ground up to top_altitude_m.
struct WeatherLayer {
    double top_altitude_m{500.0};

    bool operator==(const WeatherLayer&) const = default;
};

/// Line-of-sight slant distance R = H / sin(alpha).
/// Throws DomainError unless 0 < elevation <= 90 and altitude > 0.
double los_distance_m(const LinkGeometry& geom);

/// Slant distance through a weather layer, H_w / sin(alpha).
/// Throws DomainError on non-positive layer altitude or elevation out of (0, 90].
double slant_through_layer_m(const WeatherLayer& layer, double elevation_deg);

/// Full beam footprint diameter on the ground: D_tx + R * theta.
/// The radius is half of this. Throws DomainError on negative inputs.
double ground_footprint_diameter_m(double tx_aperture_m, double los_m,
                                   double divergence_rad);

} // namespace haplink
