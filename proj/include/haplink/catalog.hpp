#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace haplink {

enum class PlatformClass { FixedWing, Balloon, Airship, Tethered };

std::string to_string(PlatformClass c);
PlatformClass platform_class_from_string(const std::string& s);

/// One aerial platform from the embedded catalog. Numeric fields are absent
/// when the source gives none; ranged source cells carry the range's upper
/// bound. endurance is the source text verbatim ("26 days", "Months", ...).
struct PlatformRecord {
    std::string maker;
    std::string name;
    PlatformClass klass{PlatformClass::FixedWing};
    std::optional<double> altitude_km{};
    std::optional<double> payload_kg{};
    std::optional<double> payload_power_w{};
    std::string endurance;
};

struct CatalogFilter {
    std::optional<PlatformClass> klass{};
    std::optional<double> min_payload_kg{};
};

/// The embedded catalog source (CSV, header + one line per record).
std::string_view embedded_catalog_csv();

/// All records, parsed once.
const std::vector<PlatformRecord>& platform_catalog();

/// Records matching the filter; records without a payload figure never match
/// a min_payload filter.
std::vector<PlatformRecord> catalog(const CatalogFilter& filter);

} // namespace haplink
