#include "haplink/point.hpp"

#include "haplink/geometry.hpp"
#include "haplink/optics.hpp"

namespace haplink {

PointResult run_point(const Scenario& s) {
    PointResult r;
    r.los_m = los_distance_m(s.geometry);

    const double divergence = s.method == Method::Method1
                                  ? diffraction_divergence_rad(s.transmitter)
                                  : nanobob_divergence_rad(s.transmitter);
    r.footprint_diameter_m =
        ground_footprint_diameter_m(s.transmitter.aperture_m, r.los_m, divergence);

    r.method1 = method1_total(s);
    r.nanobob = nanobob_total(s);
    r.selected = s.method;
    r.selected_channel_db = s.method == Method::Method1
                                ? r.method1.channel_total_db
                                : r.nanobob.channel_total_db;

    r.dv = dv_feasibility(s, r.selected_channel_db);
    r.cv = cv_feasibility(s, r.selected_channel_db);
    return r;
}

} // namespace haplink
