#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "haplink/errors.hpp"
#include "haplink/point.hpp"
#include "haplink/sweep.hpp"
#include "haplink/table.hpp"

using namespace haplink;
using doctest::Approx;

namespace {

const std::vector<Cell>& row_at(const SeriesTable& t, double x) {
    for (const auto& row : t.rows)
        if (row.at(0).value == Approx(x).epsilon(1e-12))
            return row;
    REQUIRE(false);
    return t.rows.front();
}

int column(const SeriesTable& t, const std::string& name) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name)
            return static_cast<int>(i);
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("value formatting is 9 significant digits") {
    CHECK(format_value(2.132774243435149) == "2.13277424");
    CHECK(format_value(0.25) == "0.25");
    CHECK(format_value(20000.0) == "20000");
    CHECK(format_value(1.5e-5) == "1.5e-05");
    CHECK(format_value(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("csv shape: header first, LF endings, x ascending") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig11"), Scenario{});
    const std::string csv = to_csv(t);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "divergence_mrad,footprint_radius_m,footprint_diameter_m");
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');
    for (size_t i = 1; i < t.rows.size(); ++i)
        CHECK(t.rows[i - 1].at(0).value < t.rows[i].at(0).value);
}

TEST_CASE("fig11 runs through the 10 m and 30 m radius footprints") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig11"), Scenario{});
    const int radius = column(t, "footprint_radius_m");
    CHECK(row_at(t, 1.0).at(radius).value == Approx(10.05));
    CHECK(row_at(t, 3.0).at(radius).value == Approx(30.05));
    CHECK(row_at(t, 0.0).at(radius).value == Approx(0.05));
    // straight line: equal second differences
    const double a = row_at(t, 2.0).at(radius).value;
    const double b = row_at(t, 4.0).at(radius).value;
    const double c = row_at(t, 6.0).at(radius).value;
    CHECK(c - b == Approx(b - a).epsilon(1e-12));
}

TEST_CASE("fig2 reproduces the weather attenuation rows at 1 km visibility") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig2"), Scenario{});
    const auto& row = row_at(t, 1.0);
    CHECK(row.at(column(t, "fog_db_per_km")).value ==
          Approx(2.132774243435149).epsilon(1e-12));
    CHECK(row.at(column(t, "rain_db_per_km")).value == 2.8);
    CHECK(row.at(column(t, "snow_db_per_km")).value == 58.0);
}

TEST_CASE("fig6 moonless qber curve crosses the 11% bound at ~52.3 dB") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig6"), Scenario{});
    const int qber_col = column(t, "qber_moonless");
    double crossing = -1.0;
    for (size_t i = 1; i < t.rows.size(); ++i) {
        const double q0 = t.rows[i - 1].at(qber_col).value;
        const double q1 = t.rows[i].at(qber_col).value;
        if (q0 < 0.11 && q1 >= 0.11) {
            const double x0 = t.rows[i - 1].at(0).value;
            const double x1 = t.rows[i].at(0).value;
            crossing = x0 + (0.11 - q0) / (q1 - q0) * (x1 - x0);
            break;
        }
    }
    CHECK(crossing == Approx(52.3).epsilon(0.002));
}

TEST_CASE("fig3 spans 20 to 230 km with the nanobob curve on top") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig3"), Scenario{});
    CHECK(t.rows.front().at(0).value == 20.0);
    CHECK(t.rows.back().at(0).value == 230.0);
    const int m1 = column(t, "method1_channel_db");
    const int nano = column(t, "nanobob_channel_db");
    for (const auto& row : t.rows)
        CHECK(row.at(nano).value > row.at(m1).value);
    CHECK(row_at(t, 20.0).at(m1).value == Approx(4.180012495934801).epsilon(1e-12));
}

TEST_CASE("fig8 forces its held-constant conditions") {
    Scenario off_book;
    off_book.transmitter.aperture_m = 0.3;
    off_book.receiver.aperture_m = 1.0;
    off_book.sky = SkyRadiance::from_preset(SkyPreset::DayCloud);
    off_book.weather = WeatherCondition{WeatherKind::Snow, 0.5, {}};
    const std::string forced = to_csv(run_sweep(SweepSpec::preset("fig8"), off_book));
    const std::string reference = to_csv(run_sweep(SweepSpec::preset("fig8"), Scenario{}));
    CHECK(forced == reference);
}

TEST_CASE("fig9 qber falls with divergence at fixed distance") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig9"), Scenario{});
    const auto& row = row_at(t, 60.0);
    const double q1 = row.at(column(t, "qber_div1mrad")).value;
    const double q3 = row.at(column(t, "qber_div3mrad")).value;
    const double q10 = row.at(column(t, "qber_div10mrad")).value;
    CHECK(q1 < q3);
    CHECK(q3 < q10);
    CHECK(q1 < 0.11);   // 1 mrad stays operational at 60 km
    CHECK(q10 > 0.11);  // 10 mrad does not
}

TEST_CASE("fig10 snr decreases with distance and divergence") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig10"), Scenario{});
    const int snr1 = column(t, "cv_snr_div1mrad");
    double prev = 1e300;
    for (const auto& row : t.rows) {
        CHECK(row.at(snr1).value < prev);
        prev = row.at(snr1).value;
    }
    const auto& row = row_at(t, 60.0);
    CHECK(row.at(column(t, "cv_snr_div5mrad")).value <
          row.at(column(t, "cv_snr_div3mrad")).value);
}

TEST_CASE("the json mirror is valid json and carries the csv numbers") {
    const SeriesTable t = run_sweep(SweepSpec::preset("fig2"), Scenario{});
    const nlohmann::json j = nlohmann::json::parse(to_json(t));
    REQUIRE(j["columns"].size() == t.columns.size());
    REQUIRE(j["rows"].size() == t.rows.size());
    for (size_t c = 0; c < t.columns.size(); ++c)
        CHECK(j["columns"][c].get<std::string>() == t.columns[c]);
    // spot-check a row: parsing the 9-significant-digit text recovers the
    // same text on re-formatting
    const auto& row = j["rows"][5];
    for (size_t c = 0; c < t.rows[5].size(); ++c)
        CHECK(format_value(row[c].get<double>()) ==
              format_value(t.rows[5][c].value));
}

TEST_CASE("series selectors narrow the preset columns") {
    SweepSpec one_preset = SweepSpec::preset("fig6");
    one_preset.sky_presets = {SkyPreset::Moonless};
    const SeriesTable t6 = run_sweep(one_preset, Scenario{});
    CHECK(t6.columns == std::vector<std::string>{"channel_loss_db", "qber_moonless"});

    SweepSpec one_grade = SweepSpec::preset("fig4");
    one_grade.methods = {Method::Method1};
    one_grade.weather_grades_km = {1.0};
    const SeriesTable t4 = run_sweep(one_grade, Scenario{});
    CHECK(t4.columns == std::vector<std::string>{"los_km", "method1_v1km_db"});
    // the narrowed column matches the full preset's corresponding column
    const SeriesTable full = run_sweep(SweepSpec::preset("fig4"), Scenario{});
    CHECK(row_at(t4, 60.0).at(1).value ==
          row_at(full, 60.0).at(column(full, "method1_v1km_db")).value);

    SweepSpec nano_only = SweepSpec::preset("fig3");
    nano_only.methods = {Method::NanoBob};
    CHECK(run_sweep(nano_only, Scenario{}).columns ==
          std::vector<std::string>{"los_km", "nanobob_channel_db"});
}

TEST_CASE("sweep output is byte-identical across runs") {
    for (const char* name : {"fig3", "fig6", "fig11"}) {
        const std::string a = to_csv(run_sweep(SweepSpec::preset(name), Scenario{}));
        const std::string b = to_csv(run_sweep(SweepSpec::preset(name), Scenario{}));
        CHECK(a == b);
        const std::string ja = to_json(run_sweep(SweepSpec::preset(name), Scenario{}));
        const std::string jb = to_json(run_sweep(SweepSpec::preset(name), Scenario{}));
        CHECK(ja == jb);
    }
}

TEST_CASE("custom sweeps follow a scenario field path") {
    const SweepSpec spec = SweepSpec::custom("geometry.elevation_deg", 10.0, 90.0, 17);
    const SeriesTable t = run_sweep(spec, Scenario{});
    CHECK(t.columns.front() == "geometry.elevation_deg");
    CHECK(t.rows.size() == 17);

    Scenario direct;
    direct.geometry.elevation_deg = 90.0;
    CHECK(row_at(t, 90.0).at(column(t, "method1_channel_db")).value ==
          method1_total(direct).channel_total_db);
    CHECK(row_at(t, 90.0).at(column(t, "dv_feasible")).value == 1.0);
}

TEST_CASE("failing grid points become error cells and the sweep continues") {
    // elevations beyond 90 violate the geometry invariant point by point
    const SweepSpec spec = SweepSpec::custom("geometry.elevation_deg", 80.0, 100.0, 21);
    const SeriesTable t = run_sweep(spec, Scenario{});
    CHECK(t.rows.size() == 21);
    CHECK(row_at(t, 90.0).at(1).ok);
    CHECK_FALSE(row_at(t, 91.0).at(1).ok);
    const std::string csv = to_csv(t);
    CHECK(csv.find(",error") != std::string::npos);
    const std::string json_text = to_json(t);
    CHECK(json_text.find("\"error\"") != std::string::npos);
}

TEST_CASE("a typo in the variable path is an input error, not an error table") {
    CHECK_THROWS_WITH_AS(
        run_sweep(SweepSpec::custom("geometry.elevation_degg", 10.0, 80.0, 5),
                  Scenario{}),
        doctest::Contains("unknown key"), ConfigError);
    // so is sweeping a field that can never hold a number
    CHECK_THROWS_AS(run_sweep(SweepSpec::custom("method", 1.0, 5.0, 3), Scenario{}),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(SweepSpec::custom("weather.condition", 1.0, 5.0, 3),
                              Scenario{}),
                    ConfigError);
}

TEST_CASE("sweep spec validation") {
    CHECK_THROWS_AS(run_sweep(SweepSpec::custom("geometry.elevation_deg", 10, 5, 5),
                              Scenario{}),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(SweepSpec::custom("geometry.elevation_deg", 10, 80, 1),
                              Scenario{}),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(SweepSpec::preset("fig12"), Scenario{}), ConfigError);
    CHECK_THROWS_AS(run_sweep(SweepSpec::custom("geometry.elevation_deg", -1.0, 10.0,
                                                5, SweepScale::Log),
                              Scenario{}),
                    ConfigError);
}

TEST_CASE("log-scale custom sweeps use a geometric grid") {
    const SweepSpec spec =
        SweepSpec::custom("weather.visibility_km", 0.1, 10.0, 3, SweepScale::Log);
    Scenario foggy;
    foggy.weather = WeatherCondition{WeatherKind::Fog, 1.0, {}};
    const SeriesTable t = run_sweep(spec, foggy);
    CHECK(t.rows.at(0).at(0).value == Approx(0.1));
    CHECK(t.rows.at(1).at(0).value == Approx(1.0));
    CHECK(t.rows.at(2).at(0).value == Approx(10.0));
}
