#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "haplink/catalog.hpp"
#include "haplink/errors.hpp"
#include "haplink/point.hpp"
#include "haplink/scenario.hpp"
#include "haplink/sweep.hpp"
#include "haplink/table.hpp"

using namespace haplink;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_infeasible = 1;
constexpr int exit_input_error = 2;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return exit_ok;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return exit_input_error;
    }
    f << text;
    return exit_ok;
}

Scenario load_or_default(const std::string& path) {
    if (path.empty())
        return Scenario{};
    return load_scenario_file(path);
}

json breakdown_json(const LossBreakdown& b) {
    return json{{"pointing_db", b.pointing_db},
                {"geometric_db", b.geometric_db},
                {"geometric_raw_db", b.geometric_raw_db},
                {"molecular_db", b.molecular_db},
                {"weather_db", b.weather_db},
                {"fixed_atmospheric_db", b.fixed_atmospheric_db},
                {"receiver_db", b.receiver_db},
                {"channel_total_db", b.channel_total_db},
                {"system_total_db", b.system_total_db}};
}

json point_json(const PointResult& r) {
    return json{
        {"los_m", r.los_m},
        {"footprint_diameter_m", r.footprint_diameter_m},
        {"selected_method", to_string(r.selected)},
        {"selected_channel_db", r.selected_channel_db},
        {"method1", breakdown_json(r.method1)},
        {"nanobob", breakdown_json(r.nanobob)},
        {"dv",
         {{"signal_count_hz", r.dv.signal_count_hz},
          {"noise_count_hz", r.dv.noise_count_hz},
          {"qber", r.dv.metric},
          {"feasible", r.dv.feasible},
          {"margin_db", r.dv.margin_db}}},
        {"cv",
         {{"snr", r.cv.metric},
          {"feasible", r.cv.feasible},
          {"margin_db", r.cv.margin_db}}}};
}

void print_breakdown_text(std::ostringstream& out, const LossBreakdown& b) {
    const auto line = [&out](const char* label, double v) {
        out << "  " << label;
        for (size_t n = std::string(label).size(); n < 20; ++n)
            out << ' ';
        out << format_value(v) << "\n";
    };
    out << to_string(b.method) << " loss breakdown (dB)\n";
    line("pointing", b.pointing_db);
    line("geometric", b.geometric_db);
    line("molecular", b.molecular_db);
    line("weather", b.weather_db);
    line("fixed atmospheric", b.fixed_atmospheric_db);
    line("channel total", b.channel_total_db);
    line("receiver", b.receiver_db);
    line("system total", b.system_total_db);
}

int run_budget(const std::string& scenario_path, const std::string& method_flag,
               bool as_json, const std::string& out_path) {
    Scenario s = load_or_default(scenario_path);
    validate(s);
    if (!method_flag.empty())
        s.method = method_flag == "method1" ? Method::Method1 : Method::NanoBob;
    const PointResult r = run_point(s);

    if (as_json)
        return write_output(point_json(r).dump(2) + "\n", out_path);

    std::ostringstream out;
    out << "LoS distance: " << format_value(r.los_m) << " m, footprint diameter: "
        << format_value(r.footprint_diameter_m) << " m\n";
    print_breakdown_text(out, r.selected == Method::Method1 ? r.method1 : r.nanobob);
    out << "dv-qkd: qber " << format_value(r.dv.metric) << " (limit "
        << format_value(s.dv.qber_limit) << ") "
        << (r.dv.feasible ? "feasible" : "infeasible") << ", margin "
        << format_value(r.dv.margin_db) << " dB\n";
    out << "cv-qkd: snr " << format_value(r.cv.metric) << " (threshold "
        << format_value(s.cv.snr_threshold) << ") "
        << (r.cv.feasible ? "feasible" : "infeasible") << ", margin "
        << format_value(r.cv.margin_db) << " dB\n";
    return write_output(out.str(), out_path);
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& figure,
                  const std::string& var, double min, double max, int points,
                  bool log_scale, bool as_json, const std::string& out_path) {
    const Scenario s = load_or_default(scenario_path);
    SweepSpec spec;
    if (!figure.empty()) {
        spec = SweepSpec::preset(figure);
    } else {
        spec = SweepSpec::custom(var, min, max, points,
                                 log_scale ? SweepScale::Log : SweepScale::Linear);
    }
    const SeriesTable table = run_sweep(spec, s);
    return write_output(as_json ? to_json(table) : to_csv(table), out_path);
}

int run_feasibility(const std::string& scenario_path, const std::string& solve,
                    const std::string& protocol_flag, bool as_json,
                    const std::string& out_path) {
    Scenario s = load_or_default(scenario_path);
    validate(s);
    const Protocol protocol = protocol_flag == "cv" ? Protocol::Cv : Protocol::Dv;

    if (solve == "max-loss") {
        const double loss =
            protocol == Protocol::Dv
                ? max_tolerable_loss_db(s.sky, s.receiver, s.detector, s.dv,
                                        s.transmitter.wavelength_m)
                : cv_threshold_loss_db(s.cv);
        std::string text;
        json j{{"solve", "max-loss"}, {"protocol", protocol_flag}};
        if (std::isinf(loss)) {
            j["status"] = "unbounded";
            text = "max tolerable channel loss: unbounded\n";
        } else {
            j["status"] = "found";
            j["channel_loss_db"] = loss;
            text = "max tolerable channel loss: " + format_value(loss) + " dB (" +
                   protocol_flag + ")\n";
        }
        return write_output(as_json ? j.dump(2) + "\n" : text, out_path);
    }

    // max-divergence
    const DivergenceSolution sol = max_feasible_divergence(s, protocol);
    json j{{"solve", "max-divergence"}, {"protocol", protocol_flag}};
    std::string text;
    int code = exit_ok;
    switch (sol.status) {
    case SolveStatus::Found:
        j["status"] = "found";
        j["divergence_rad"] = sol.divergence_rad;
        j["divergence_mrad"] = sol.divergence_rad * 1e3;
        text = "max feasible divergence: " + format_value(sol.divergence_rad * 1e3) +
               " mrad (" + protocol_flag + ", " + to_string(s.method) + ")\n";
        break;
    case SolveStatus::Unbounded:
        j["status"] = "unbounded";
        text = "max feasible divergence: unbounded\n";
        break;
    case SolveStatus::NoSolution:
        j["status"] = "no-solution";
        text = "infeasible at the diffraction-limited divergence; no solution\n";
        code = exit_infeasible;
        break;
    }
    const int write_code = write_output(as_json ? j.dump(2) + "\n" : text, out_path);
    return write_code == exit_ok ? code : write_code;
}

int run_catalog(const std::string& class_flag, double min_payload, bool has_min_payload,
                bool as_json, const std::string& out_path) {
    CatalogFilter filter;
    if (!class_flag.empty())
        filter.klass = platform_class_from_string(class_flag);
    if (has_min_payload)
        filter.min_payload_kg = min_payload;
    const auto records = catalog(filter);

    if (as_json) {
        json arr = json::array();
        for (const auto& r : records) {
            json rec{{"maker", r.maker},
                     {"name", r.name},
                     {"class", to_string(r.klass)},
                     {"endurance", r.endurance}};
            rec["altitude_km"] = r.altitude_km ? json(*r.altitude_km) : json(nullptr);
            rec["payload_kg"] = r.payload_kg ? json(*r.payload_kg) : json(nullptr);
            rec["payload_power_w"] =
                r.payload_power_w ? json(*r.payload_power_w) : json(nullptr);
            arr.push_back(rec);
        }
        return write_output(arr.dump(2) + "\n", out_path);
    }

    std::ostringstream out;
    const auto cell = [](const std::optional<double>& v) {
        return v ? format_value(*v) : std::string("-");
    };
    const auto pad = [](std::string s, size_t width) {
        while (s.size() < width)
            s += ' ';
        return s;
    };
    out << pad("name", 30) << pad("class", 12) << pad("alt_km", 8)
        << pad("payload_kg", 12) << pad("power_w", 9) << "endurance\n";
    for (const auto& r : records)
        out << pad(r.name, 30) << pad(to_string(r.klass), 12)
            << pad(cell(r.altitude_km), 8) << pad(cell(r.payload_kg), 12)
            << pad(cell(r.payload_power_w), 9) << r.endurance << "\n";
    return write_output(out.str(), out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-space optical QKD link budget and feasibility tool"};
    app.require_subcommand(1);

    std::string scenario_path, method_flag, out_path;
    bool as_json = false;

    auto* budget = app.add_subcommand("budget", "Loss breakdown and feasibility "
                                                "for one scenario point");
    budget->add_option("--scenario", scenario_path, "Scenario JSON file");
    budget->add_option("--method", method_flag, "Loss method for the verdict")
        ->check(CLI::IsMember({"method1", "nanobob"}));
    budget->add_flag("--json", as_json, "JSON output");
    budget->add_option("--out", out_path, "Write output to a file");

    std::string figure, var;
    double sweep_min = 0.0, sweep_max = 0.0;
    int sweep_points = 2;
    bool log_scale = false;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps and figure presets");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file");
    auto* fig_opt = sweep->add_option("--figure", figure, "Figure preset")
                        ->check(CLI::IsMember(figure_preset_names()));
    auto* var_opt = sweep->add_option("--var", var, "Scenario field path to sweep "
                                                    "(e.g. geometry.elevation_deg)");
    fig_opt->excludes(var_opt);
    sweep->add_option("--min", sweep_min, "Sweep minimum")->needs(var_opt);
    sweep->add_option("--max", sweep_max, "Sweep maximum")->needs(var_opt);
    sweep->add_option("--points", sweep_points, "Grid point count")->needs(var_opt);
    sweep->add_flag("--log", log_scale, "Logarithmic grid")->needs(var_opt);
    sweep->add_flag("--json", as_json, "JSON output instead of CSV");
    sweep->add_option("--out", out_path, "Write output to a file");

    std::string solve, protocol_flag = "dv";
    auto* feas = app.add_subcommand("feasibility", "Inverse solvers");
    feas->add_option("--scenario", scenario_path, "Scenario JSON file");
    feas->add_option("--solve", solve, "Quantity to solve for")
        ->required()
        ->check(CLI::IsMember({"max-loss", "max-divergence"}));
    feas->add_option("--protocol", protocol_flag, "Protocol family")
        ->check(CLI::IsMember({"dv", "cv"}));
    feas->add_flag("--json", as_json, "JSON output");
    feas->add_option("--out", out_path, "Write output to a file");

    std::string class_flag;
    double min_payload = 0.0;
    auto* cat = app.add_subcommand("catalog", "Aerial platform catalog");
    cat->add_option("--class", class_flag, "Platform class filter")
        ->check(CLI::IsMember({"fixed-wing", "balloon", "airship", "tethered"}));
    auto* min_payload_opt =
        cat->add_option("--min-payload", min_payload, "Minimum payload capacity (kg)");
    cat->add_flag("--json", as_json, "JSON output");
    cat->add_option("--out", out_path, "Write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (budget->parsed())
            return run_budget(scenario_path, method_flag, as_json, out_path);
        if (sweep->parsed()) {
            if (figure.empty() && var.empty())
                throw ConfigError("sweep needs --figure or --var");
            if (!var.empty() &&
                (sweep->count("--min") == 0 || sweep->count("--max") == 0 ||
                 sweep->count("--points") == 0))
                throw ConfigError("custom sweeps need --min, --max and --points");
            return run_sweep_cmd(scenario_path, figure, var, sweep_min, sweep_max,
                                 sweep_points, log_scale, as_json, out_path);
        }
        if (feas->parsed())
            return run_feasibility(scenario_path, solve, protocol_flag, as_json,
                                   out_path);
        if (cat->parsed())
            return run_catalog(class_flag, min_payload,
                               min_payload_opt->count() > 0, as_json, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_ok;
}
