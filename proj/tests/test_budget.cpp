#include <doctest.h>

#include <cmath>
#include <vector>

#include "haplink/budget.hpp"
#include "haplink/errors.hpp"
#include "haplink/optics.hpp"
#include "haplink/scenario.hpp"

using namespace haplink;
using doctest::Approx;

namespace {

Scenario at_elevation(double elevation_deg) {
    Scenario s;
    s.geometry.elevation_deg = elevation_deg;
    return s;
}

Scenario at_los_km(double los_km) {
    Scenario s;
    s.geometry.elevation_deg =
        std::asin(s.geometry.hap_altitude_m / (los_km * 1000.0)) * 180.0 /
        3.14159265358979323846;
    return s;
}

} // namespace

TEST_CASE("geometric loss") {
    const double theta = diffraction_divergence_rad(TransmitterOptics{});
    CHECK(geometric_loss_raw_db(0.1, 0.4, 60000.0, theta) ==
          Approx(9.789325626062567).epsilon(1e-12));
    CHECK(geometric_loss_raw_db(0.1, 0.4, 20000.0, theta) ==
          Approx(1.55099160903587).epsilon(1e-12));
    // spot diameter equal to the receiver aperture collects everything
    CHECK(geometric_loss_raw_db(0.4, 0.4, 0.0, 0.0) == 0.0);
    // near-field spot smaller than the aperture goes negative (raw value)
    CHECK(geometric_loss_raw_db(0.1, 0.4, 0.0, 0.0) < 0.0);
    CHECK_THROWS_AS(geometric_loss_raw_db(0.0, 0.4, 1.0, 1e-6), DomainError);
    CHECK_THROWS_AS(geometric_loss_raw_db(0.1, 0.4, -1.0, 1e-6), DomainError);
}

TEST_CASE("method-1 totals at the reference parameters") {
    const LossBreakdown at20 = method1_total(at_elevation(20.0));
    CHECK(at20.pointing_db == Approx(2.4290208868989316).epsilon(1e-12));
    CHECK(at20.geometric_db == Approx(9.58418203814224).epsilon(1e-12));
    CHECK(at20.molecular_db == Approx(0.5847608800326175).epsilon(1e-12));
    CHECK(at20.weather_db == 0.0);
    CHECK(at20.fixed_atmospheric_db == 0.0);
    CHECK(at20.channel_total_db == Approx(12.597963805073787).epsilon(1e-12));
    CHECK(at20.channel_total_db == Approx(12.6).epsilon(1e-3));
    CHECK(at20.receiver_db == Approx(5.2));
    CHECK(at20.system_total_db == Approx(12.597963805073787 + 5.2).epsilon(1e-12));

    const LossBreakdown at90 = method1_total(at_elevation(90.0));
    CHECK(at90.channel_total_db == Approx(4.180012495934801).epsilon(1e-12));
}

TEST_CASE("nanobob totals at the reference parameters") {
    const LossBreakdown at90 = nanobob_total(at_elevation(90.0));
    CHECK(at90.fixed_atmospheric_db == 3.0);
    CHECK(at90.pointing_db == 0.0);
    CHECK(at90.molecular_db == 0.0);
    CHECK(at90.channel_total_db == Approx(12.178981710840853).epsilon(1e-12));

    const LossBreakdown at20 = nanobob_total(at_elevation(20.0));
    CHECK(at20.channel_total_db == Approx(21.49794801793051).epsilon(1e-12));
}

TEST_CASE("nanobob reduces to pure spreading when efficiencies are ideal") {
    Scenario s = at_elevation(90.0);
    s.nanobob_efficiencies = {1.0, 1.0, 1.0};
    s.turbulence.fixed_atmospheric_loss_db = 0.0;
    s.turbulence.fried_parameter_m = 1e30; // theta_atm -> 0
    const double theta = nanobob_divergence_rad(s.transmitter);
    const double expected =
        20.0 * std::log10(20000.0 * theta / s.receiver.aperture_m);
    CHECK(nanobob_total(s).channel_total_db == Approx(expected).epsilon(1e-9));
}

TEST_CASE("breakdown components sum to the channel total exactly") {
    for (const double el : {5.0, 20.0, 45.0, 90.0}) {
        for (const Method m : {Method::Method1, Method::NanoBob}) {
            Scenario s = at_elevation(el);
            s.weather = WeatherCondition{WeatherKind::Fog, 1.0, {}};
            const LossBreakdown b = total_loss(s, m);
            CHECK(b.channel_total_db == b.pointing_db + b.geometric_db +
                                            b.molecular_db + b.weather_db +
                                            b.fixed_atmospheric_db);
            CHECK(b.system_total_db == b.channel_total_db + b.receiver_db);
            CHECK(b.pointing_db >= 0.0);
            CHECK(b.geometric_db >= 0.0);
            CHECK(b.molecular_db >= 0.0);
            CHECK(b.weather_db >= 0.0);
        }
    }
}

TEST_CASE("nanobob sits above method 1 across the whole distance range") {
    for (int i = 0; i <= 210; ++i) {
        const Scenario s = at_los_km(20.0 + i);
        CHECK(nanobob_total(s).channel_total_db > method1_total(s).channel_total_db);
    }
}

TEST_CASE("both totals grow with the los distance") {
    double prev_m1 = -1.0, prev_nano = -1.0;
    for (int i = 0; i <= 210; i += 5) {
        const Scenario s = at_los_km(20.0 + i);
        const double m1 = method1_total(s).channel_total_db;
        const double nano = nanobob_total(s).channel_total_db;
        CHECK(m1 >= prev_m1);
        CHECK(nano >= prev_nano);
        prev_m1 = m1;
        prev_nano = nano;
    }
}

TEST_CASE("a weather layer adds exactly its slant term to both methods") {
    Scenario clear = at_elevation(30.0);
    Scenario fog = clear;
    fog.weather = WeatherCondition{WeatherKind::Fog, 1.0, {}}; // 500 m default layer

    for (const Method m : {Method::Method1, Method::NanoBob}) {
        const LossBreakdown b0 = total_loss(clear, m);
        const LossBreakdown b1 = total_loss(fog, m);
        CHECK(b1.weather_db > 0.0);
        CHECK(b1.channel_total_db - b0.channel_total_db ==
              Approx(b1.weather_db).epsilon(1e-12));
    }

    // snow at 0.5 km visibility through a 10 km slant: 116 dB/km * 10 km
    Scenario snow = at_elevation(30.0);
    snow.weather = WeatherCondition{WeatherKind::Snow, 0.5, {}};
    CHECK(total_loss(snow, Method::Method1).weather_db == Approx(1160.0).epsilon(1e-12));
}

TEST_CASE("geometric loss is clamped inside totals, raw value preserved") {
    Scenario s = at_elevation(90.0);
    s.geometry.hap_altitude_m = 1.0; // 1 m "link": spot far smaller than the aperture
    s.pointing.jitter_rad = 0.0;
    const LossBreakdown b = method1_total(s);
    CHECK(b.geometric_raw_db < 0.0);
    CHECK(b.geometric_db == 0.0);
    CHECK(b.channel_total_db == Approx(b.molecular_db));
}

TEST_CASE("method-1 loss over transmitter aperture has an interior optimum") {
    // brute-force scan, the independent route for the optimum location
    double best_aperture = 0.0;
    double best_loss = 1e300;
    for (int i = 0; i <= 2500; ++i) {
        const double aperture = 0.05 + 0.25 * i / 2500.0;
        Scenario s = at_elevation(20.0);
        s.transmitter.aperture_m = aperture;
        const double loss = method1_total(s).channel_total_db;
        if (loss < best_loss) {
            best_loss = loss;
            best_aperture = aperture;
        }
    }
    CHECK(best_aperture > 0.11);
    CHECK(best_aperture < 0.13);
    CHECK(best_aperture == Approx(0.1179).epsilon(1e-3));
}

TEST_CASE("beam wander can be folded into the jitter in quadrature") {
    Scenario s = at_elevation(20.0);
    const double base = method1_total(s).pointing_db;
    s.pointing.include_beam_wander = true;
    const double with_wander = method1_total(s).pointing_db;
    CHECK(with_wander > base);

    const double los = los_distance_m(s.geometry);
    const double wander_rms =
        std::sqrt(beam_wander_variance_m2(los, s.transmitter, 0.2));
    const double jitter_eff = std::hypot(5e-6, wander_rms / los);
    CHECK(with_wander ==
          Approx(pointing_loss_db({jitter_eff, false},
                                  diffraction_divergence_rad(s.transmitter)))
              .epsilon(1e-12));
}
