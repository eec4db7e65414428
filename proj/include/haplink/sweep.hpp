#pragma once

#include <string>
#include <vector>

#include "haplink/scenario.hpp"
#include "haplink/table.hpp"

namespace haplink {

enum class SweepScale { Linear, Log };

/// Either a figure preset (fig2..fig11) or a custom sweep over a dotted
/// scenario-field path ("geometry.elevation_deg").
///
/// The series selectors narrow which columns a preset emits; left empty they
/// default to both methods, the 0.5/1/2/5 km visibility grades and all six
/// sky presets. fig3/fig4/fig5/fig7 consult the method selector, fig4/fig5
/// the weather grades, fig6 the sky presets.
struct SweepSpec {
    std::string figure{};
    std::string variable_path{};
    double min{};
    double max{};
    int points{2};
    SweepScale scale{SweepScale::Linear};
    std::vector<Method> methods{};
    std::vector<double> weather_grades_km{};
    std::vector<SkyPreset> sky_presets{};

    static SweepSpec preset(const std::string& name) {
        SweepSpec s;
        s.figure = name;
        return s;
    }
    static SweepSpec custom(const std::string& path, double min, double max,
                            int points, SweepScale scale = SweepScale::Linear) {
        SweepSpec s;
        s.variable_path = path;
        s.min = min;
        s.max = max;
        s.points = points;
        s.scale = scale;
        return s;
    }
};

std::vector<std::string> figure_preset_names();

/// Evaluates the sweep on top of the given scenario. Figure presets force the
/// held-constant conditions of the corresponding figure (documented per
/// preset in the implementation). Failed grid points are flagged with error
/// cells and the sweep continues. Rows are ordered ascending in the swept
/// variable.
SeriesTable run_sweep(const SweepSpec& spec, const Scenario& base);

} // namespace haplink
