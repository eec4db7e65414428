#pragma once

#include <string>

#include "haplink/atmosphere.hpp"
#include "haplink/budget.hpp"
#include "haplink/geometry.hpp"
#include "haplink/optics.hpp"
#include "haplink/qkd.hpp"

namespace haplink {

/// One fully specified link evaluation point. Every field defaults to the
/// reference parameter set; scenario files overlay individual fields.
struct Scenario {
    LinkGeometry geometry{};
    TransmitterOptics transmitter{};
    ReceiverOptics receiver{};
    PointingModel pointing{};
    TurbulenceModel turbulence{};
    WeatherCondition weather{};
    SkyRadiance sky{};
    ReceiverLosses receiver_losses{};
    NanoBobEfficiencies nanobob_efficiencies{};
    DvProtocolParams dv{};
    DetectorParams detector{};
    CvProtocolParams cv{};
    MolecularAbsorptionTable molecular_table{};
    Method method{Method::Method1};

    bool operator==(const Scenario&) const = default;
};

/// Checks every cross-field invariant; throws ConfigError naming the field.
void validate(const Scenario& s);

/// Parse and validate a scenario document. Unknown keys are hard errors.
Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Serialize a scenario; load_scenario_text(save_scenario(s)) == s.
std::string save_scenario(const Scenario& s);

} // namespace haplink
