#pragma once

#include "haplink/budget.hpp"
#include "haplink/qkd.hpp"
#include "haplink/scenario.hpp"

namespace haplink {

/// Everything the engine knows about one scenario point: both loss
/// breakdowns and the DV/CV verdicts at the selected method's channel loss.
struct PointResult {
    double los_m{};
    double footprint_diameter_m{};
    LossBreakdown method1{};
    LossBreakdown nanobob{};
    Method selected{Method::Method1};
    double selected_channel_db{};
    FeasibilityResult dv{};
    FeasibilityResult cv{};
};

PointResult run_point(const Scenario& s);

} // namespace haplink
