#include "mmlink/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace mmlink {

using nlohmann::json;

std::string band_name(Band band)
{
    return band == Band::microwave ? "microwave" : "mmwave";
}

ScenarioConfig default_scenario()
{
    ScenarioConfig cfg;
    cfg.microwave = {Band::microwave, 2.4, 20.0e6, 46.7, 0.005, 0.0};
    cfg.mmwave = {Band::mmwave, 60.0, 2.16e9, 68.0, 16.0, 0.0};
    cfg.antenna = {deg_to_rad(20.0), deg_to_rad(90.0), 0.05, 20.0e-6};
    cfg.geometry = {10.0, 10.0, 10.0};
    cfg.obstacles = {0.5, 0.5};
    // Placeholder traffic defaults: 2 Gbps offered load, 2000-bit packets at
    // 1e-3 packet error probability, Shannon-capacity (long packet) rates.
    cfg.traffic = {2.0e9, 2000.0, 1.0e-3, true};
    cfg.tx_power_mw = 2.5;
    cfg.gain_both_ends = false;
    cfg.eq12_paper_literal = false;
    cfg.eq15_paper_literal = false;
    return cfg;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw std::invalid_argument("scenario validation failed: " + field + ": " + what);
}

void check_band(const BandParams& b, const std::string& section)
{
    if (!(b.carrier_ghz > 0)) fail(section + ".carrier_ghz", "must be > 0");
    if (!(b.bandwidth_hz > 0)) fail(section + ".bandwidth_hz", "must be > 0");
    if (!(b.ref_attenuation_db > 0)) fail(section + ".ref_attenuation_db", "must be > 0");
    if (!(b.atmo_db_per_km >= 0)) fail(section + ".atmo_db_per_km", "must be >= 0");
    if (!(b.obstacle_loss_db >= 0)) fail(section + ".obstacle_loss_db", "must be >= 0");
}

}  // namespace

void validate(const ScenarioConfig& cfg)
{
    // NaN trips the range checks below; +inf needs an explicit rejection.
    const std::pair<double, const char*> numeric_fields[] = {
        {cfg.microwave.bandwidth_hz, "microwave.bandwidth_hz"},
        {cfg.microwave.ref_attenuation_db, "microwave.ref_attenuation_db"},
        {cfg.microwave.atmo_db_per_km, "microwave.atmo_db_per_km"},
        {cfg.microwave.obstacle_loss_db, "microwave.obstacle_loss_db"},
        {cfg.microwave.carrier_ghz, "microwave.carrier_ghz"},
        {cfg.mmwave.bandwidth_hz, "mmwave.bandwidth_hz"},
        {cfg.mmwave.ref_attenuation_db, "mmwave.ref_attenuation_db"},
        {cfg.mmwave.atmo_db_per_km, "mmwave.atmo_db_per_km"},
        {cfg.mmwave.carrier_ghz, "mmwave.carrier_ghz"},
        {cfg.antenna.pilot_time_s, "antenna.pilot_time_s"},
        {cfg.geometry.d_sd_m, "geometry.d_sd_m"},
        {cfg.geometry.d_sr_m, "geometry.d_sr_m"},
        {cfg.geometry.d_rd_m, "geometry.d_rd_m"},
        {cfg.obstacles.lambda_per_s, "obstacles.lambda_per_s"},
        {cfg.obstacles.nu_per_s, "obstacles.nu_per_s"},
        {cfg.traffic.offered_load_bps, "traffic.offered_load_bps"},
        {cfg.traffic.packet_bits, "traffic.packet_bits"},
        {cfg.tx_power_mw, "tx_power_mw"},
    };
    for (const auto& [value, name] : numeric_fields) {
        if (!std::isfinite(value)) fail(name, "must be finite");
    }

    check_band(cfg.microwave, "microwave");
    check_band(cfg.mmwave, "mmwave");
    if (cfg.microwave.label != Band::microwave) fail("microwave.label", "wrong band label");
    if (cfg.mmwave.label != Band::mmwave) fail("mmwave.label", "wrong band label");

    const AntennaPattern& a = cfg.antenna;
    if (!(a.theta_rad > 0)) fail("antenna.theta", "must be > 0");
    if (!(a.theta_rad <= a.phi_rad)) fail("antenna.theta", "beam-level beamwidth exceeds sector-level beamwidth");
    if (!(a.phi_rad <= 2 * kPi)) fail("antenna.phi", "must be <= 360 degrees");
    if (!(a.epsilon > 0 && a.epsilon < 1)) fail("antenna.epsilon", "side-lobe gain must lie in (0,1)");
    if (!(a.pilot_time_s > 0)) fail("antenna.pilot_time_s", "must be > 0");

    if (!(cfg.geometry.d_sd_m > 0)) fail("geometry.d_sd_m", "must be > 0");
    if (!(cfg.geometry.d_sr_m > 0)) fail("geometry.d_sr_m", "must be > 0");
    if (!(cfg.geometry.d_rd_m > 0)) fail("geometry.d_rd_m", "must be > 0");

    if (!(cfg.obstacles.lambda_per_s > 0)) fail("obstacles.lambda_per_s", "must be > 0");
    if (!(cfg.obstacles.nu_per_s > 0)) fail("obstacles.nu_per_s", "must be > 0");

    const TrafficParams& t = cfg.traffic;
    if (!(t.offered_load_bps >= 0)) fail("traffic.offered_load_bps", "must be >= 0");
    if (!(t.packet_bits >= 1)) fail("traffic.packet_bits", "must be >= 1");
    if (!(t.packet_error_prob > 0 && t.packet_error_prob < 1))
        fail("traffic.packet_error_prob", "must lie in (0,1)");

    if (!(cfg.tx_power_mw > 0)) fail("tx_power_mw", "must be > 0");
    if (!(cfg.microwave.bandwidth_hz < cfg.mmwave.bandwidth_hz))
        fail("microwave.bandwidth_hz", "must be smaller than mmwave.bandwidth_hz");
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed)
{
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            fail(section.empty() ? item.key() : section + "." + item.key(), "unknown key");
        }
    }
}

double get_number(const json& obj, const std::string& section, const std::string& key,
                  double fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(section + "." + key, "expected a number");
    return v.get<double>();
}

bool get_bool(const json& obj, const std::string& section, const std::string& key, bool fallback)
{
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(section + "." + key, "expected a boolean");
    return v.get<bool>();
}

void parse_band(const json& obj, const std::string& section, BandParams& band, bool allow_obstacle_loss)
{
    std::set<std::string> allowed = {"carrier_ghz", "bandwidth_hz", "ref_attenuation_db",
                                     "atmo_db_per_km"};
    if (allow_obstacle_loss) allowed.insert("obstacle_loss_db");
    reject_unknown_keys(obj, section, allowed);
    band.carrier_ghz = get_number(obj, section, "carrier_ghz", band.carrier_ghz);
    band.bandwidth_hz = get_number(obj, section, "bandwidth_hz", band.bandwidth_hz);
    band.ref_attenuation_db = get_number(obj, section, "ref_attenuation_db", band.ref_attenuation_db);
    band.atmo_db_per_km = get_number(obj, section, "atmo_db_per_km", band.atmo_db_per_km);
    if (allow_obstacle_loss) {
        band.obstacle_loss_db = get_number(obj, section, "obstacle_loss_db", band.obstacle_loss_db);
    }
}

// Angles may be given in degrees (the documented form) or radians (the
// canonical form emitted by write_scenario), but not both.
double parse_angle(const json& obj, const std::string& section, const std::string& stem,
                   double fallback_rad)
{
    const std::string deg_key = stem + "_deg";
    const std::string rad_key = stem + "_rad";
    if (obj.contains(deg_key) && obj.contains(rad_key)) {
        fail(section + "." + stem, "give either _deg or _rad, not both");
    }
    if (obj.contains(rad_key)) return get_number(obj, section, rad_key, fallback_rad);
    if (obj.contains(deg_key)) return deg_to_rad(get_number(obj, section, deg_key, 0.0));
    return fallback_rad;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario parse failed: ") + e.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("scenario parse failed: top level must be an object");
    }
    if (!root.contains("schema")) fail("schema", "missing required key");
    if (!root.at("schema").is_number_integer() || root.at("schema").get<int>() != 1) {
        fail("schema", "unsupported schema version (expected 1)");
    }

    reject_unknown_keys(root, "", {"schema", "microwave", "mmwave", "antenna", "geometry",
                                   "obstacles", "traffic", "tx_power_mw", "gain_both_ends",
                                   "eq12_paper_literal", "eq15_paper_literal"});

    ScenarioConfig cfg = default_scenario();

    if (root.contains("microwave")) parse_band(root["microwave"], "microwave", cfg.microwave, true);
    if (root.contains("mmwave")) parse_band(root["mmwave"], "mmwave", cfg.mmwave, false);

    if (root.contains("antenna")) {
        const json& a = root["antenna"];
        reject_unknown_keys(a, "antenna", {"theta_deg", "theta_rad", "phi_deg", "phi_rad",
                                           "epsilon", "pilot_time_s"});
        cfg.antenna.theta_rad = parse_angle(a, "antenna", "theta", cfg.antenna.theta_rad);
        cfg.antenna.phi_rad = parse_angle(a, "antenna", "phi", cfg.antenna.phi_rad);
        cfg.antenna.epsilon = get_number(a, "antenna", "epsilon", cfg.antenna.epsilon);
        cfg.antenna.pilot_time_s = get_number(a, "antenna", "pilot_time_s", cfg.antenna.pilot_time_s);
    }
    if (root.contains("geometry")) {
        const json& g = root["geometry"];
        reject_unknown_keys(g, "geometry", {"d_sd_m", "d_sr_m", "d_rd_m"});
        cfg.geometry.d_sd_m = get_number(g, "geometry", "d_sd_m", cfg.geometry.d_sd_m);
        cfg.geometry.d_sr_m = get_number(g, "geometry", "d_sr_m", cfg.geometry.d_sr_m);
        cfg.geometry.d_rd_m = get_number(g, "geometry", "d_rd_m", cfg.geometry.d_rd_m);
    }
    if (root.contains("obstacles")) {
        const json& o = root["obstacles"];
        reject_unknown_keys(o, "obstacles", {"lambda_per_s", "nu_per_s"});
        cfg.obstacles.lambda_per_s = get_number(o, "obstacles", "lambda_per_s", cfg.obstacles.lambda_per_s);
        cfg.obstacles.nu_per_s = get_number(o, "obstacles", "nu_per_s", cfg.obstacles.nu_per_s);
    }
    if (root.contains("traffic")) {
        const json& t = root["traffic"];
        reject_unknown_keys(t, "traffic", {"offered_load_bps", "packet_bits",
                                           "packet_error_prob", "long_packet_mode"});
        cfg.traffic.offered_load_bps = get_number(t, "traffic", "offered_load_bps", cfg.traffic.offered_load_bps);
        cfg.traffic.packet_bits = get_number(t, "traffic", "packet_bits", cfg.traffic.packet_bits);
        cfg.traffic.packet_error_prob = get_number(t, "traffic", "packet_error_prob", cfg.traffic.packet_error_prob);
        cfg.traffic.long_packet_mode = get_bool(t, "traffic", "long_packet_mode", cfg.traffic.long_packet_mode);
    }
    cfg.tx_power_mw = get_number(root, "", "tx_power_mw", cfg.tx_power_mw);
    cfg.gain_both_ends = get_bool(root, "", "gain_both_ends", cfg.gain_both_ends);
    cfg.eq12_paper_literal = get_bool(root, "", "eq12_paper_literal", cfg.eq12_paper_literal);
    cfg.eq15_paper_literal = get_bool(root, "", "eq15_paper_literal", cfg.eq15_paper_literal);

    validate(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open scenario file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg)
{
    json root;
    root["schema"] = 1;
    root["microwave"] = {{"carrier_ghz", cfg.microwave.carrier_ghz},
                         {"bandwidth_hz", cfg.microwave.bandwidth_hz},
                         {"ref_attenuation_db", cfg.microwave.ref_attenuation_db},
                         {"atmo_db_per_km", cfg.microwave.atmo_db_per_km},
                         {"obstacle_loss_db", cfg.microwave.obstacle_loss_db}};
    root["mmwave"] = {{"carrier_ghz", cfg.mmwave.carrier_ghz},
                      {"bandwidth_hz", cfg.mmwave.bandwidth_hz},
                      {"ref_attenuation_db", cfg.mmwave.ref_attenuation_db},
                      {"atmo_db_per_km", cfg.mmwave.atmo_db_per_km}};
    root["antenna"] = {{"theta_rad", cfg.antenna.theta_rad},
                       {"phi_rad", cfg.antenna.phi_rad},
                       {"epsilon", cfg.antenna.epsilon},
                       {"pilot_time_s", cfg.antenna.pilot_time_s}};
    root["geometry"] = {{"d_sd_m", cfg.geometry.d_sd_m},
                        {"d_sr_m", cfg.geometry.d_sr_m},
                        {"d_rd_m", cfg.geometry.d_rd_m}};
    root["obstacles"] = {{"lambda_per_s", cfg.obstacles.lambda_per_s},
                         {"nu_per_s", cfg.obstacles.nu_per_s}};
    root["traffic"] = {{"offered_load_bps", cfg.traffic.offered_load_bps},
                       {"packet_bits", cfg.traffic.packet_bits},
                       {"packet_error_prob", cfg.traffic.packet_error_prob},
                       {"long_packet_mode", cfg.traffic.long_packet_mode}};
    root["tx_power_mw"] = cfg.tx_power_mw;
    root["gain_both_ends"] = cfg.gain_both_ends;
    root["eq12_paper_literal"] = cfg.eq12_paper_literal;
    root["eq15_paper_literal"] = cfg.eq15_paper_literal;
    return root.dump(2) + "\n";
}

void write_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open scenario file for writing: " + path.string());
    }
    out << scenario_to_json(cfg);
}

}  // namespace mmlink
