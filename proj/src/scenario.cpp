#include "haplink/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "haplink/errors.hpp"

namespace haplink {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string weather_kind_to_string(WeatherKind k) {
    switch (k) {
    case WeatherKind::Clear: return "clear";
    case WeatherKind::Fog:   return "fog";
    case WeatherKind::Rain:  return "rain";
    case WeatherKind::Snow:  return "snow";
    }
    return "clear";
}

WeatherKind weather_kind_from_string(const std::string& s) {
    if (s == "clear") return WeatherKind::Clear;
    if (s == "fog")   return WeatherKind::Fog;
    if (s == "rain")  return WeatherKind::Rain;
    if (s == "snow")  return WeatherKind::Snow;
    fail("weather.condition must be one of clear|fog|rain|snow, got \"" + s + "\"");
}

SkyPreset sky_preset_from_string(const std::string& s) {
    if (s == "day_cloud") return SkyPreset::DayCloud;
    if (s == "day_hazy")  return SkyPreset::DayHazy;
    if (s == "day_clear") return SkyPreset::DayClear;
    if (s == "full_moon") return SkyPreset::FullMoon;
    if (s == "new_moon")  return SkyPreset::NewMoon;
    if (s == "moonless")  return SkyPreset::Moonless;
    fail("sky.preset must be one of day_cloud|day_hazy|day_clear|full_moon|"
         "new_moon|moonless, got \"" + s + "\"");
}

Method method_from_string(const std::string& s) {
    if (s == "method1") return Method::Method1;
    if (s == "nanobob") return Method::NanoBob;
    fail("method must be method1|nanobob, got \"" + s + "\"");
}

/// One JSON object overlaying a struct's fields. Tracks the keys it consumed
/// so anything left over is reported as unknown.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object())
            fail(path_ + " must be a JSON object");
    }

    void num(const char* key, double& target) {
        if (const json* v = take(key)) {
            require_number(*v, key);
            target = v->get<double>();
        }
    }

    void opt_num(const char* key, std::optional<double>& target) {
        if (const json* v = take(key)) {
            require_number(*v, key);
            target = v->get<double>();
        }
    }

    void flag(const char* key, bool& target) {
        if (const json* v = take(key)) {
            if (!v->is_boolean())
                fail(path_ + "." + key + " must be a boolean");
            target = v->get<bool>();
        }
    }

    std::optional<std::string> opt_str(const char* key) {
        if (const json* v = take(key)) {
            if (!v->is_string())
                fail(path_ + "." + key + " must be a string");
            return v->get<std::string>();
        }
        return std::nullopt;
    }

    /// Rejects any key the overlay did not consume. Call last.
    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!used_.count(it.key()))
                fail("unknown key \"" + path_ + "." + it.key() + "\"");
    }

private:
    const json* take(const char* key) {
        auto it = obj_.find(key);
        if (it == obj_.end())
            return nullptr;
        used_.insert(key);
        return &*it;
    }

    void require_number(const json& v, const char* key) const {
        if (!v.is_number())
            fail(path_ + "." + key + " must be a number");
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> used_;
};

void check(bool ok, const std::string& msg) {
    if (!ok)
        fail("scenario invariant violated: " + msg);
}

std::string fmt(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double parse_table_key_nm(const std::string& key) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc{} || ptr != key.data() + key.size())
        fail("molecular_absorption_db_per_km key \"" + key +
             "\" is not a wavelength in nm");
    return value;
}

} // namespace

void validate(const Scenario& s) {
    check(s.geometry.elevation_deg > 0.0 && s.geometry.elevation_deg <= 90.0,
          "geometry.elevation_deg must be in (0, 90], got " + fmt(s.geometry.elevation_deg));
    check(s.geometry.hap_altitude_m > 0.0,
          "geometry.hap_altitude_m must be positive");

    check(s.transmitter.aperture_m > 0.0, "transmitter.aperture_m must be positive");
    check(s.transmitter.wavelength_m > 0.0, "transmitter.wavelength_m must be positive");
    if (s.transmitter.divergence_override_rad)
        check(*s.transmitter.divergence_override_rad > 0.0,
              "transmitter.divergence_override_rad must be positive");
    check(s.transmitter.classical_power_w >= 0.0,
          "transmitter.classical_power_w must be non-negative");

    check(s.receiver.aperture_m > 0.0, "receiver.aperture_m must be positive");
    check(s.receiver.detector_diameter_m > 0.0,
          "receiver.detector_diameter_m must be positive");
    check(s.receiver.filter_bandwidth_um > 0.0,
          "receiver.filter_bandwidth_um must be positive");
    check(s.receiver.telescope_focal_length_m.has_value() ==
              s.receiver.relay_focal_length_m.has_value(),
          "receiver focal chain needs both telescope_focal_length_m and "
          "relay_focal_length_m");
    if (s.receiver.lens_separation_m)
        check(s.receiver.has_focal_chain(),
              "receiver.lens_separation_m needs the focal chain");
    if (s.receiver.fov_solid_angle_sr)
        check(*s.receiver.fov_solid_angle_sr > 0.0,
              "receiver.fov_solid_angle_sr must be positive");

    check(s.pointing.jitter_rad >= 0.0, "pointing.jitter_rad must be non-negative");

    check(s.turbulence.fried_parameter_m > 0.0,
          "turbulence.fried_parameter_m must be positive");
    check(s.turbulence.fixed_atmospheric_loss_db >= 0.0,
          "turbulence.fixed_atmospheric_loss_db must be non-negative");

    if (s.weather.kind != WeatherKind::Clear) {
        check(s.weather.visibility_km.has_value() && *s.weather.visibility_km > 0.0,
              "weather.visibility_km must be positive for fog/rain/snow");
        const double layer = s.weather.resolved_layer_altitude_m();
        check(layer > 0.0, "weather.layer_altitude_m must be positive");
        check(layer <= s.geometry.hap_altitude_m,
              "weather.layer_altitude_m must not exceed geometry.hap_altitude_m");
    }

    check(s.sky.preset.has_value() != s.sky.custom_brightness.has_value(),
          "sky needs exactly one of preset and brightness_w_m2_sr_um");
    if (s.sky.custom_brightness)
        check(*s.sky.custom_brightness >= 0.0,
              "sky.brightness_w_m2_sr_um must be non-negative");
    check(s.sky.light_pollution >= 0.0,
          "sky.light_pollution_w_m2_sr_um must be non-negative");

    check(s.receiver_losses.non_ideal_optics_db >= 0.0,
          "receiver_losses.non_ideal_optics_db must be non-negative");
    check(s.receiver_losses.telescope_db >= 0.0,
          "receiver_losses.telescope_db must be non-negative");

    const auto eff_ok = [](double v) { return v > 0.0 && v <= 1.0; };
    check(eff_ok(s.nanobob_efficiencies.transmitter) &&
              eff_ok(s.nanobob_efficiencies.receiver) &&
              eff_ok(s.nanobob_efficiencies.pointing),
          "nanobob_efficiencies must each be in (0, 1]");

    check(s.dv.repetition_rate_hz > 0.0, "dv_protocol.repetition_rate_hz must be positive");
    check(s.dv.signal_mean_photon > 0.0 && s.dv.decoy_mean_photon > 0.0,
          "dv_protocol mean photon numbers must be positive");
    check(s.dv.signal_probability >= 0.0 && s.dv.decoy_probability >= 0.0,
          "dv_protocol state probabilities must be non-negative");
    check(std::abs(s.dv.signal_probability + s.dv.decoy_probability - 1.0) <= 1e-9,
          "dv_protocol state probabilities must sum to 1");
    check(s.dv.qber_limit > 0.0 && s.dv.qber_limit < 0.5,
          "dv_protocol.qber_limit must be in (0, 0.5)");
    check(s.dv.gate_width_s >= 0.0, "dv_protocol.gate_width_s must be non-negative");

    check(s.detector.efficiency > 0.0 && s.detector.efficiency <= 1.0,
          "detector.efficiency must be in (0, 1]");
    check(s.detector.dead_time_s >= 0.0, "detector.dead_time_s must be non-negative");
    check(s.detector.dark_rate_hz >= 0.0, "detector.dark_rate_hz must be non-negative");
    check(s.detector.diameter_m > 0.0, "detector.diameter_m must be positive");

    check(s.cv.modulation_variance_snu > 0.0,
          "cv_protocol.modulation_variance_snu must be positive");
    check(s.cv.excess_noise_snu >= 0.0 && s.cv.electronic_noise_snu >= 0.0,
          "cv_protocol noise terms must be non-negative");
    check(s.cv.snr_threshold > 0.0, "cv_protocol.snr_threshold must be positive");

    for (const auto& [nm, rate] : s.molecular_table.db_per_km_by_nm) {
        check(nm > 0.0, "molecular_absorption_db_per_km wavelengths must be positive");
        check(rate >= 0.0, "molecular_absorption_db_per_km rates must be non-negative");
    }
}

static Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object())
        fail("scenario document must be a JSON object");

    static const std::set<std::string> sections{
        "geometry",       "transmitter",  "receiver",
        "pointing",       "turbulence",   "weather",
        "sky",            "receiver_losses", "nanobob_efficiencies",
        "dv_protocol",    "detector",     "cv_protocol",
        "molecular_absorption_db_per_km", "method"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!sections.count(it.key()))
            fail("unknown key \"" + it.key() + "\"");

    Scenario s;

    if (auto it = doc.find("geometry"); it != doc.end()) {
        Section sec(*it, "geometry");
        sec.num("hap_altitude_m", s.geometry.hap_altitude_m);
        sec.num("elevation_deg", s.geometry.elevation_deg);
        sec.finish();
    }
    if (auto it = doc.find("transmitter"); it != doc.end()) {
        Section sec(*it, "transmitter");
        sec.num("aperture_m", s.transmitter.aperture_m);
        sec.num("wavelength_m", s.transmitter.wavelength_m);
        sec.opt_num("divergence_override_rad", s.transmitter.divergence_override_rad);
        sec.num("classical_power_w", s.transmitter.classical_power_w);
        sec.finish();
    }
    if (auto it = doc.find("receiver"); it != doc.end()) {
        Section sec(*it, "receiver");
        sec.num("aperture_m", s.receiver.aperture_m);
        sec.num("detector_diameter_m", s.receiver.detector_diameter_m);
        sec.opt_num("telescope_focal_length_m", s.receiver.telescope_focal_length_m);
        sec.opt_num("relay_focal_length_m", s.receiver.relay_focal_length_m);
        sec.opt_num("lens_separation_m", s.receiver.lens_separation_m);
        sec.num("filter_bandwidth_um", s.receiver.filter_bandwidth_um);
        sec.opt_num("fov_solid_angle_sr", s.receiver.fov_solid_angle_sr);
        sec.finish();
    }
    if (auto it = doc.find("pointing"); it != doc.end()) {
        Section sec(*it, "pointing");
        sec.num("jitter_rad", s.pointing.jitter_rad);
        sec.flag("include_beam_wander", s.pointing.include_beam_wander);
        sec.finish();
    }
    if (auto it = doc.find("turbulence"); it != doc.end()) {
        Section sec(*it, "turbulence");
        sec.num("fried_parameter_m", s.turbulence.fried_parameter_m);
        sec.num("fixed_atmospheric_loss_db", s.turbulence.fixed_atmospheric_loss_db);
        sec.finish();
    }
    if (auto it = doc.find("weather"); it != doc.end()) {
        Section sec(*it, "weather");
        if (auto kind = sec.opt_str("condition"))
            s.weather.kind = weather_kind_from_string(*kind);
        sec.opt_num("visibility_km", s.weather.visibility_km);
        sec.opt_num("layer_altitude_m", s.weather.layer_altitude_m);
        sec.finish();
    }
    if (auto it = doc.find("sky"); it != doc.end()) {
        Section sec(*it, "sky");
        const auto preset = sec.opt_str("preset");
        std::optional<double> custom;
        sec.opt_num("brightness_w_m2_sr_um", custom);
        if (preset && custom)
            fail("sky: give either preset or brightness_w_m2_sr_um, not both");
        if (preset) {
            s.sky.preset = sky_preset_from_string(*preset);
            s.sky.custom_brightness.reset();
        } else if (custom) {
            s.sky.custom_brightness = custom;
            s.sky.preset.reset();
        }
        sec.num("light_pollution_w_m2_sr_um", s.sky.light_pollution);
        sec.finish();
    }
    if (auto it = doc.find("receiver_losses"); it != doc.end()) {
        Section sec(*it, "receiver_losses");
        sec.num("non_ideal_optics_db", s.receiver_losses.non_ideal_optics_db);
        sec.num("telescope_db", s.receiver_losses.telescope_db);
        sec.finish();
    }
    if (auto it = doc.find("nanobob_efficiencies"); it != doc.end()) {
        Section sec(*it, "nanobob_efficiencies");
        sec.num("transmitter", s.nanobob_efficiencies.transmitter);
        sec.num("receiver", s.nanobob_efficiencies.receiver);
        sec.num("pointing", s.nanobob_efficiencies.pointing);
        sec.finish();
    }
    if (auto it = doc.find("dv_protocol"); it != doc.end()) {
        Section sec(*it, "dv_protocol");
        sec.num("repetition_rate_hz", s.dv.repetition_rate_hz);
        sec.num("signal_mean_photon", s.dv.signal_mean_photon);
        sec.num("decoy_mean_photon", s.dv.decoy_mean_photon);
        sec.num("signal_probability", s.dv.signal_probability);
        sec.num("decoy_probability", s.dv.decoy_probability);
        sec.num("qber_limit", s.dv.qber_limit);
        sec.num("gate_width_s", s.dv.gate_width_s);
        if (auto mode = sec.opt_str("count_photon_number")) {
            if (*mode == "average")
                s.dv.count_photon_number = CountPhotonNumber::Average;
            else if (*mode == "signal_only")
                s.dv.count_photon_number = CountPhotonNumber::SignalOnly;
            else
                fail("dv_protocol.count_photon_number must be average|signal_only");
        }
        sec.finish();
    }
    if (auto it = doc.find("detector"); it != doc.end()) {
        Section sec(*it, "detector");
        sec.num("efficiency", s.detector.efficiency);
        sec.num("dead_time_s", s.detector.dead_time_s);
        sec.num("dark_rate_hz", s.detector.dark_rate_hz);
        sec.num("diameter_m", s.detector.diameter_m);
        sec.finish();
    }
    if (auto it = doc.find("cv_protocol"); it != doc.end()) {
        Section sec(*it, "cv_protocol");
        sec.num("modulation_variance_snu", s.cv.modulation_variance_snu);
        sec.num("excess_noise_snu", s.cv.excess_noise_snu);
        sec.num("electronic_noise_snu", s.cv.electronic_noise_snu);
        sec.num("snr_threshold", s.cv.snr_threshold);
        sec.finish();
    }
    if (auto it = doc.find("molecular_absorption_db_per_km"); it != doc.end()) {
        if (!it->is_object())
            fail("molecular_absorption_db_per_km must be an object of nm: dB/km");
        // Replaces the whole table (a per-key overlay could never drop a
        // default entry, which would break round-tripping).
        s.molecular_table.db_per_km_by_nm.clear();
        for (auto entry = it->begin(); entry != it->end(); ++entry) {
            if (!entry.value().is_number())
                fail("molecular_absorption_db_per_km." + entry.key() +
                     " must be a number");
            s.molecular_table.db_per_km_by_nm[parse_table_key_nm(entry.key())] =
                entry.value().get<double>();
        }
    }
    if (auto it = doc.find("method"); it != doc.end()) {
        if (!it->is_string())
            fail("method must be a string");
        s.method = method_from_string(it->get<std::string>());
    }

    validate(s);
    return s;
}

Scenario load_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        // covers syntax errors (with line/column) and number overflow
        fail(std::string("scenario parse error: ") + e.what());
    }
    return scenario_from_json(doc);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str());
}

std::string save_scenario(const Scenario& s) {
    json doc;

    doc["geometry"] = {{"hap_altitude_m", s.geometry.hap_altitude_m},
                       {"elevation_deg", s.geometry.elevation_deg}};

    json tx = {{"aperture_m", s.transmitter.aperture_m},
               {"wavelength_m", s.transmitter.wavelength_m},
               {"classical_power_w", s.transmitter.classical_power_w}};
    if (s.transmitter.divergence_override_rad)
        tx["divergence_override_rad"] = *s.transmitter.divergence_override_rad;
    doc["transmitter"] = tx;

    json rx = {{"aperture_m", s.receiver.aperture_m},
               {"detector_diameter_m", s.receiver.detector_diameter_m},
               {"filter_bandwidth_um", s.receiver.filter_bandwidth_um}};
    if (s.receiver.telescope_focal_length_m)
        rx["telescope_focal_length_m"] = *s.receiver.telescope_focal_length_m;
    if (s.receiver.relay_focal_length_m)
        rx["relay_focal_length_m"] = *s.receiver.relay_focal_length_m;
    if (s.receiver.lens_separation_m)
        rx["lens_separation_m"] = *s.receiver.lens_separation_m;
    if (s.receiver.fov_solid_angle_sr)
        rx["fov_solid_angle_sr"] = *s.receiver.fov_solid_angle_sr;
    doc["receiver"] = rx;

    doc["pointing"] = {{"jitter_rad", s.pointing.jitter_rad},
                       {"include_beam_wander", s.pointing.include_beam_wander}};

    doc["turbulence"] = {
        {"fried_parameter_m", s.turbulence.fried_parameter_m},
        {"fixed_atmospheric_loss_db", s.turbulence.fixed_atmospheric_loss_db}};

    json weather = {{"condition", weather_kind_to_string(s.weather.kind)}};
    if (s.weather.visibility_km)
        weather["visibility_km"] = *s.weather.visibility_km;
    if (s.weather.layer_altitude_m)
        weather["layer_altitude_m"] = *s.weather.layer_altitude_m;
    doc["weather"] = weather;

    json sky;
    if (s.sky.preset)
        sky["preset"] = to_string(*s.sky.preset);
    if (s.sky.custom_brightness)
        sky["brightness_w_m2_sr_um"] = *s.sky.custom_brightness;
    sky["light_pollution_w_m2_sr_um"] = s.sky.light_pollution;
    doc["sky"] = sky;

    doc["receiver_losses"] = {
        {"non_ideal_optics_db", s.receiver_losses.non_ideal_optics_db},
        {"telescope_db", s.receiver_losses.telescope_db}};

    doc["nanobob_efficiencies"] = {{"transmitter", s.nanobob_efficiencies.transmitter},
                                   {"receiver", s.nanobob_efficiencies.receiver},
                                   {"pointing", s.nanobob_efficiencies.pointing}};

    doc["dv_protocol"] = {
        {"repetition_rate_hz", s.dv.repetition_rate_hz},
        {"signal_mean_photon", s.dv.signal_mean_photon},
        {"decoy_mean_photon", s.dv.decoy_mean_photon},
        {"signal_probability", s.dv.signal_probability},
        {"decoy_probability", s.dv.decoy_probability},
        {"qber_limit", s.dv.qber_limit},
        {"gate_width_s", s.dv.gate_width_s},
        {"count_photon_number",
         s.dv.count_photon_number == CountPhotonNumber::Average ? "average"
                                                                : "signal_only"}};

    doc["detector"] = {{"efficiency", s.detector.efficiency},
                       {"dead_time_s", s.detector.dead_time_s},
                       {"dark_rate_hz", s.detector.dark_rate_hz},
                       {"diameter_m", s.detector.diameter_m}};

    doc["cv_protocol"] = {{"modulation_variance_snu", s.cv.modulation_variance_snu},
                          {"excess_noise_snu", s.cv.excess_noise_snu},
                          {"electronic_noise_snu", s.cv.electronic_noise_snu},
                          {"snr_threshold", s.cv.snr_threshold}};

    json table = json::object();
    for (const auto& [nm, rate] : s.molecular_table.db_per_km_by_nm)
        table[fmt(nm)] = rate;
    doc["molecular_absorption_db_per_km"] = table;

    doc["method"] = to_string(s.method);

    return doc.dump(2) + "\n";
}

} // namespace haplink
