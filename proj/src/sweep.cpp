#include "haplink/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "haplink/errors.hpp"
#include "haplink/point.hpp"
#include "haplink/units.hpp"

namespace haplink {

namespace {

struct Series {
    std::string name;
    std::function<double(const Scenario&, double)> eval;
};

struct PresetDef {
    std::string x_name;
    double min{};
    double max{};
    int points{};
    std::function<Scenario(Scenario)> prepare;
    std::vector<Series> series;
};

/// Re-aims the geometry at a given LoS distance; elevation is the underlying
/// variable.
Scenario at_los_km(Scenario s, double los_km) {
    const double los_m = los_km * 1000.0;
    if (los_m < s.geometry.hap_altitude_m)
        throw DomainError("LoS distance shorter than the platform altitude");
    s.geometry.elevation_deg =
        std::min(90.0, rad_to_deg(std::asin(s.geometry.hap_altitude_m / los_m)));
    return s;
}

Scenario with_divergence(Scenario s, double divergence_rad) {
    s.transmitter.divergence_override_rad = divergence_rad;
    return s;
}

Scenario clear_weather(Scenario s) {
    s.weather = WeatherCondition{};
    return s;
}

double channel_db(const Scenario& s, Method m) {
    return total_loss(s, m).channel_total_db;
}

double qber_at(const Scenario& s, double channel_loss_db) {
    const double noise = noise_count_rate_hz(s.sky, s.receiver, s.detector, s.dv,
                                             s.transmitter.wavelength_m);
    const double signal = signal_count_rate_hz(s.dv, s.detector, channel_loss_db);
    return qber(signal, noise);
}

std::vector<Method> selected_methods(const SweepSpec& spec) {
    if (spec.methods.empty())
        return {Method::Method1, Method::NanoBob};
    return spec.methods;
}

std::vector<double> selected_grades(const SweepSpec& spec) {
    if (spec.weather_grades_km.empty())
        return {0.5, 1.0, 2.0, 5.0};
    return spec.weather_grades_km;
}

std::vector<SkyPreset> selected_presets(const SweepSpec& spec) {
    if (spec.sky_presets.empty())
        return {SkyPreset::DayCloud, SkyPreset::DayHazy, SkyPreset::DayClear,
                SkyPreset::FullMoon, SkyPreset::NewMoon, SkyPreset::Moonless};
    return spec.sky_presets;
}

std::vector<Series> weather_grade_series(const SweepSpec& spec, WeatherKind kind,
                                         double layer_m) {
    std::vector<Series> out;
    for (const double v : selected_grades(spec)) {
        const std::string tag = "_v" + format_value(v) + "km_db";
        const auto make = [kind, layer_m, v](Method m) {
            return [kind, layer_m, v, m](const Scenario& base, double los_km) {
                Scenario s = at_los_km(base, los_km);
                s.weather = WeatherCondition{kind, v, layer_m};
                return channel_db(s, m);
            };
        };
        for (const Method m : selected_methods(spec))
            out.push_back({to_string(m) + tag, make(m)});
    }
    return out;
}

std::vector<Series> divergence_series(
    const std::string& prefix, const std::string& suffix,
    std::function<double(const Scenario&, double, double)> eval_at_divergence) {
    std::vector<Series> out;
    for (const double mrad : {1.0, 3.0, 5.0, 10.0}) {
        out.push_back({prefix + "_div" + format_value(mrad) + "mrad" + suffix,
                       [eval_at_divergence, mrad](const Scenario& base, double x) {
                           return eval_at_divergence(base, x, mrad * 1e-3);
                       }});
    }
    return out;
}

PresetDef make_preset(const SweepSpec& spec) {
    const std::string& name = spec.figure;
    if (name == "fig2") {
        PresetDef p{"visibility_km", 0.5, 10.0, 96, {}, {}};
        const auto rate = [](WeatherKind kind) {
            return [kind](const Scenario& base, double v) {
                const WeatherCondition cond{kind, v, {}};
                return weather_rate_db_per_km(cond, base.transmitter.wavelength_m * 1e9);
            };
        };
        p.series = {{"fog_db_per_km", rate(WeatherKind::Fog)},
                    {"rain_db_per_km", rate(WeatherKind::Rain)},
                    {"snow_db_per_km", rate(WeatherKind::Snow)}};
        return p;
    }
    if (name == "fig3") {
        PresetDef p{"los_km", 20.0, 230.0, 211, clear_weather, {}};
        for (const Method m : selected_methods(spec))
            p.series.push_back(
                {to_string(m) + "_channel_db", [m](const Scenario& base, double x) {
                     return channel_db(at_los_km(base, x), m);
                 }});
        return p;
    }
    if (name == "fig4" || name == "fig5") {
        const bool fog = name == "fig4";
        PresetDef p{"los_km", 20.0, 230.0, 211, clear_weather, {}};
        p.series = weather_grade_series(spec, fog ? WeatherKind::Fog : WeatherKind::Rain,
                                        fog ? 500.0 : 5000.0);
        return p;
    }
    if (name == "fig6") {
        PresetDef p{"channel_loss_db", 0.0, 60.0, 601, clear_weather, {}};
        for (const SkyPreset preset : selected_presets(spec)) {
            p.series.push_back({"qber_" + to_string(preset),
                                [preset](const Scenario& base, double loss_db) {
                                    Scenario s = base;
                                    s.sky = SkyRadiance::from_preset(preset);
                                    return qber_at(s, loss_db);
                                }});
        }
        return p;
    }
    if (name == "fig7") {
        PresetDef p{"aperture_m", 0.05, 0.40, 141,
                    [](Scenario s) {
                        s = clear_weather(std::move(s));
                        s.geometry.elevation_deg = 20.0;
                        return s;
                    },
                    {}};
        const auto vary = [](bool tx, Method m) {
            return [tx, m](const Scenario& base, double aperture) {
                Scenario s = base;
                (tx ? s.transmitter.aperture_m : s.receiver.aperture_m) = aperture;
                return channel_db(s, m);
            };
        };
        for (const Method m : selected_methods(spec))
            p.series.push_back({to_string(m) + "_vary_tx_db", vary(true, m)});
        for (const Method m : selected_methods(spec))
            p.series.push_back({to_string(m) + "_vary_rx_db", vary(false, m)});
        return p;
    }
    if (name == "fig8" || name == "fig9" || name == "fig10") {
        PresetDef p{"los_km", 20.0, 230.0, 211,
                    [name](Scenario s) {
                        s = clear_weather(std::move(s));
                        s.transmitter.aperture_m = 0.1;
                        s.receiver.aperture_m = 0.4;
                        if (name != "fig10")
                            s.sky = SkyRadiance::from_preset(SkyPreset::Moonless);
                        return s;
                    },
                    {}};
        if (name == "fig8")
            p.series = divergence_series(
                "method1", "_db", [](const Scenario& base, double los_km, double div) {
                    return channel_db(with_divergence(at_los_km(base, los_km), div),
                                      Method::Method1);
                });
        else if (name == "fig9")
            p.series = divergence_series(
                "qber", "", [](const Scenario& base, double los_km, double div) {
                    const Scenario s = with_divergence(at_los_km(base, los_km), div);
                    return qber_at(s, channel_db(s, Method::Method1));
                });
        else
            p.series = divergence_series(
                "cv_snr", "", [](const Scenario& base, double los_km, double div) {
                    const Scenario s = with_divergence(at_los_km(base, los_km), div);
                    return cv_snr(s.cv, channel_db(s, Method::Method1));
                });
        return p;
    }
    if (name == "fig11") {
        PresetDef p{"divergence_mrad", 0.0, 10.0, 101,
                    [](Scenario s) {
                        s.geometry.elevation_deg = 90.0;
                        return s;
                    },
                    {}};
        const auto footprint = [](const Scenario& base, double mrad) {
            return ground_footprint_diameter_m(base.transmitter.aperture_m,
                                               los_distance_m(base.geometry),
                                               mrad * 1e-3);
        };
        p.series = {{"footprint_radius_m",
                     [footprint](const Scenario& base, double mrad) {
                         return footprint(base, mrad) / 2.0;
                     }},
                    {"footprint_diameter_m", footprint}};
        return p;
    }
    throw ConfigError("unknown figure preset \"" + name +
                      "\" (expected fig2..fig11)");
}

std::vector<double> make_grid(double min, double max, int points, SweepScale scale) {
    std::vector<double> xs(points);
    if (scale == SweepScale::Log) {
        const double a = std::log(min);
        const double b = std::log(max);
        for (int i = 0; i < points; ++i)
            xs[i] = std::exp(a + (b - a) * i / (points - 1));
    } else {
        for (int i = 0; i < points; ++i)
            xs[i] = min + (max - min) * i / (points - 1);
    }
    return xs;
}

SeriesTable evaluate(const Scenario& base, const std::string& x_name,
                     const std::vector<double>& xs, const std::vector<Series>& series) {
    SeriesTable table;
    table.columns.push_back(x_name);
    for (const auto& s : series)
        table.columns.push_back(s.name);
    table.rows.reserve(xs.size());
    for (const double x : xs) {
        std::vector<Cell> row;
        row.reserve(series.size() + 1);
        row.push_back(Cell{x, true});
        for (const auto& s : series) {
            try {
                row.push_back(Cell{s.eval(base, x), true});
            } catch (const std::exception&) {
                row.push_back(Cell::error());
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// Sweeping a scenario field: serialize, poke the dotted path, reload.
Scenario scenario_with_field(const Scenario& base, const std::string& path, double x) {
    nlohmann::json doc = nlohmann::json::parse(save_scenario(base));
    nlohmann::json* node = &doc;
    size_t begin = 0;
    while (true) {
        const size_t dot = path.find('.', begin);
        const std::string segment =
            path.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (segment.empty())
            throw ConfigError("bad sweep variable path \"" + path + "\"");
        if (dot == std::string::npos) {
            (*node)[segment] = x;
            break;
        }
        node = &(*node)[segment];
        begin = dot + 1;
    }
    return load_scenario_text(doc.dump());
}

} // namespace

std::vector<std::string> figure_preset_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6",
            "fig7", "fig8", "fig9", "fig10", "fig11"};
}

SeriesTable run_sweep(const SweepSpec& spec, const Scenario& base) {
    validate(base);

    if (!spec.figure.empty()) {
        const PresetDef preset = make_preset(spec);
        const Scenario prepared = preset.prepare ? preset.prepare(base) : base;
        validate(prepared);
        return evaluate(prepared, preset.x_name,
                        make_grid(preset.min, preset.max, preset.points,
                                  SweepScale::Linear),
                        preset.series);
    }

    if (spec.variable_path.empty())
        throw ConfigError("sweep needs a figure preset or a variable path");
    if (spec.points < 2)
        throw ConfigError("sweep needs at least 2 points");
    if (!(spec.min < spec.max))
        throw ConfigError("sweep needs min < max");
    if (spec.scale == SweepScale::Log && !(spec.min > 0.0))
        throw ConfigError("log-scale sweep needs min > 0");

    // A typo'd path or a non-numeric target field fails for every x alike;
    // surface those as input errors instead of a table full of error markers.
    // Value-dependent failures (invariant violations at some x) stay per-row.
    try {
        scenario_with_field(base, spec.variable_path, spec.min);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.find("unknown key") != std::string::npos ||
            what.find("must be a string") != std::string::npos ||
            what.find("must be a boolean") != std::string::npos ||
            what.find("must be a JSON object") != std::string::npos)
            throw;
    }

    SeriesTable table;
    table.columns = {spec.variable_path, "method1_channel_db", "nanobob_channel_db",
                     "dv_qber",          "dv_feasible",        "cv_snr",
                     "cv_feasible"};
    for (const double x : make_grid(spec.min, spec.max, spec.points, spec.scale)) {
        std::vector<Cell> row{Cell{x, true}};
        try {
            const PointResult r =
                run_point(scenario_with_field(base, spec.variable_path, x));
            row.push_back(Cell{r.method1.channel_total_db, true});
            row.push_back(Cell{r.nanobob.channel_total_db, true});
            row.push_back(Cell{r.dv.metric, true});
            row.push_back(Cell{r.dv.feasible ? 1.0 : 0.0, true});
            row.push_back(Cell{r.cv.metric, true});
            row.push_back(Cell{r.cv.feasible ? 1.0 : 0.0, true});
        } catch (const std::exception&) {
            row.assign(table.columns.size(), Cell::error());
            row[0] = Cell{x, true};
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace haplink
