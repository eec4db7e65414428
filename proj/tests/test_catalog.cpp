#include <doctest.h>

#include <algorithm>
#include <string>

#include "haplink/catalog.hpp"
#include "haplink/errors.hpp"

using namespace haplink;

namespace {

const PlatformRecord& find(const std::string& name) {
    for (const auto& r : platform_catalog())
        if (r.name == name)
            return r;
    REQUIRE(false);
    return platform_catalog().front();
}

bool contains(const std::vector<PlatformRecord>& records, const std::string& name) {
    return std::any_of(records.begin(), records.end(),
                       [&](const PlatformRecord& r) { return r.name == name; });
}

} // namespace

TEST_CASE("zephyr s record") {
    const PlatformRecord& r = find("Zephyr S");
    CHECK(r.klass == PlatformClass::FixedWing);
    CHECK(r.altitude_km == 21.0);
    CHECK(r.payload_kg == 2.0);
    CHECK(r.endurance == "26 days");
}

TEST_CASE("min payload filter keeps the heavy lifters") {
    const auto heavy = catalog({{}, 250.0});
    CHECK(contains(heavy, "Stratobus"));
    CHECK(contains(heavy, "Helios"));
    CHECK(contains(heavy, "Global Hawk"));
    CHECK_FALSE(contains(heavy, "Zephyr S"));
    for (const auto& r : heavy) {
        REQUIRE(r.payload_kg.has_value());
        CHECK(*r.payload_kg >= 250.0);
    }
}

TEST_CASE("class filter") {
    const auto balloons = catalog({PlatformClass::Balloon, {}});
    CHECK(contains(balloons, "Loon"));
    CHECK_FALSE(contains(balloons, "Stratobus"));
    for (const auto& r : balloons)
        CHECK(r.klass == PlatformClass::Balloon);

    const auto tethered = catalog({PlatformClass::Tethered, {}});
    CHECK(contains(tethered, "Helikite"));
    CHECK(contains(tethered, "74K Aerostats"));
}

TEST_CASE("an empty filter returns every embedded row") {
    const auto all = catalog({});
    const std::string_view csv = embedded_catalog_csv();
    const size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(all.size() == lines - 1); // header
    CHECK(all.size() == 27);
}

TEST_CASE("absent cells stay absent") {
    CHECK_FALSE(find("Sunglider").payload_kg.has_value());
    CHECK_FALSE(find("Bloonstar").altitude_km.has_value());
    CHECK_FALSE(find("Bloon").payload_kg.has_value()); // given in persons, not kg
    CHECK_FALSE(find("74K Aerostats").altitude_km.has_value());
    CHECK(find("Bloonstar").payload_kg == 140.0);
    // records without a payload figure never match a payload filter
    CHECK_FALSE(contains(catalog({{}, 0.0}), "Sunglider"));
}

TEST_CASE("altitudes are positive wherever given") {
    for (const auto& r : platform_catalog())
        if (r.altitude_km)
            CHECK(*r.altitude_km > 0.0);
}

TEST_CASE("class names round-trip") {
    for (const PlatformClass c : {PlatformClass::FixedWing, PlatformClass::Balloon,
                                  PlatformClass::Airship, PlatformClass::Tethered})
        CHECK(platform_class_from_string(to_string(c)) == c);
    CHECK_THROWS_AS(platform_class_from_string("blimp"), ConfigError);
}
