#include "haplink/catalog.hpp"

#include <charconv>
#include <sstream>

#include "haplink/errors.hpp"

namespace haplink {

// Columns: maker,name,class,altitude_km,payload_kg,payload_power_w,endurance.
// Numeric cells are empty when the source gives none; ranged source cells
// carry the range's upper bound, "1 ton" and "20 kW" are converted to kg/W.
static constexpr std::string_view catalog_csv =
    R"(maker,name,class,altitude_km,payload_kg,payload_power_w,endurance
Airbus (UK),Zephyr S,fixed-wing,21,2,200,26 days
Airbus (UK),Zephyr T,fixed-wing,21,5,500,45 days
Airbus (UK),Zephyr Future Evolution,fixed-wing,,40,,
Google (US),Titan Aerospace (Solara 50),fixed-wing,20,32,,
Prismatic (UK),PHASE-8,fixed-wing,3,2,50,"Days with solar, 8h without"
Prismatic (UK),PHASA-35,fixed-wing,21,25,1000,1 year for up to 35° latitude
AlphaLink (GER),AlphaLink (multi-body),fixed-wing,20,450,,10 days (one year in the future)
UAVOS (US),ApusDuo,fixed-wing,20,2,,1 year at 35° latitude
DLR (GER),Elektra-2,fixed-wing,20,120,5000,Almost unlimited
Facebook (US),Aquila,fixed-wing,27,,,90 days
Boeing (US),Odysseus,fixed-wing,20,25,250,Months
NASA (US),Centurion,fixed-wing,30,272,,90 minutes test flight
NASA (US),Helios,fixed-wing,30,330,,24 hours
NASA (US),Global Hawk,fixed-wing,20,680,,31 hours with 7 ton fuel
Ordnance Survey (UK),Astigan,fixed-wing,21,25,,90 days
HAPSMobile/SoftBank (JPN+US),Sunglider,fixed-wing,20,,,Months
Stratospheric Platforms (UK),Stratospheric Platforms HAP,fixed-wing,20,140,20000,9 days
Zero 2 Infinity (Spain),Bloonstar,balloon,,140,,
Zero 2 Infinity (Spain),Bloon,balloon,36,,,
CNES (FR),Stratospheric balloon,balloon,37,400,,
Google (US),Loon,balloon,25,10,100,
Thales Alenia Space (FR),Stratobus,airship,20,250,5000,
Avealto Ltd (UK),Ascender 28,airship,25,,,
Sceye (US),Sceye,airship,20,,,
Lockheed Martin (US),420K Aerostats,airship,4.6,1000,,
Lockheed Martin (US),74K Aerostats,tethered,,500,,
Allsopp Helikites (UK),Helikite,tethered,1.5,30,,
)";

std::string to_string(PlatformClass c) {
    switch (c) {
    case PlatformClass::FixedWing: return "fixed-wing";
    case PlatformClass::Balloon:   return "balloon";
    case PlatformClass::Airship:   return "airship";
    case PlatformClass::Tethered:  return "tethered";
    }
    return "fixed-wing";
}

PlatformClass platform_class_from_string(const std::string& s) {
    if (s == "fixed-wing") return PlatformClass::FixedWing;
    if (s == "balloon")    return PlatformClass::Balloon;
    if (s == "airship")    return PlatformClass::Airship;
    if (s == "tethered")   return PlatformClass::Tethered;
    throw ConfigError("platform class must be fixed-wing|balloon|airship|tethered, got \"" +
                      s + "\"");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::optional<double> opt_number(const std::string& cell) {
    if (cell.empty())
        return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw Error("catalog: bad numeric cell \"" + cell + "\"");
    return v;
}

std::vector<PlatformRecord> parse_catalog() {
    std::vector<PlatformRecord> records;
    std::istringstream in{std::string(catalog_csv)};
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7)
            throw Error("catalog: malformed row \"" + line + "\"");
        PlatformRecord rec;
        rec.maker = f[0];
        rec.name = f[1];
        rec.klass = platform_class_from_string(f[2]);
        rec.altitude_km = opt_number(f[3]);
        rec.payload_kg = opt_number(f[4]);
        rec.payload_power_w = opt_number(f[5]);
        rec.endurance = f[6];
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace

std::string_view embedded_catalog_csv() { return catalog_csv; }

const std::vector<PlatformRecord>& platform_catalog() {
    static const std::vector<PlatformRecord> records = parse_catalog();
    return records;
}

std::vector<PlatformRecord> catalog(const CatalogFilter& filter) {
    std::vector<PlatformRecord> out;
    for (const auto& rec : platform_catalog()) {
        if (filter.klass && rec.klass != *filter.klass)
            continue;
        if (filter.min_payload_kg &&
            (!rec.payload_kg || *rec.payload_kg < *filter.min_payload_kg))
            continue;
        out.push_back(rec);
    }
    return out;
}

} // namespace haplink
