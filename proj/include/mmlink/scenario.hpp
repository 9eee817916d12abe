#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace mmlink {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

enum class Band { microwave, mmwave };

std::string band_name(Band band);

// Per-band radio constants: reference attenuation c_x at 1 m, atmospheric
// absorption in dB/km, and (microwave only) per-obstacle penetration loss.
struct BandParams {
    Band label = Band::microwave;
    double carrier_ghz = 0.0;
    double bandwidth_hz = 0.0;
    double ref_attenuation_db = 0.0;
    double atmo_db_per_km = 0.0;
    double obstacle_loss_db = 0.0;

    bool operator==(const BandParams&) const = default;
};

// Ideal sector pattern: beam-level beamwidth theta, sector-level beamwidth
// phi, side-lobe gain epsilon, and the single-pilot transmission time.
struct AntennaPattern {
    double theta_rad = 0.0;
    double phi_rad = 0.0;
    double epsilon = 0.0;
    double pilot_time_s = 0.0;

    bool operator==(const AntennaPattern&) const = default;
};

struct Geometry {
    double d_sd_m = 0.0;
    double d_sr_m = 0.0;
    double d_rd_m = 0.0;

    bool operator==(const Geometry&) const = default;
};

// Poisson obstacle arrivals at rate lambda, exponential sojourns at rate nu.
struct ObstacleProcess {
    double lambda_per_s = 0.0;
    double nu_per_s = 0.0;

    bool operator==(const ObstacleProcess&) const = default;
};

struct TrafficParams {
    double offered_load_bps = 0.0;
    double packet_bits = 1.0;
    double packet_error_prob = 0.5;
    bool long_packet_mode = true;

    bool operator==(const TrafficParams&) const = default;
};

struct ScenarioConfig {
    BandParams microwave;
    BandParams mmwave;
    AntennaPattern antenna;
    Geometry geometry;
    ObstacleProcess obstacles;
    TrafficParams traffic;
    double tx_power_mw = 0.0;
    bool gain_both_ends = false;
    bool eq12_paper_literal = false;
    bool eq15_paper_literal = false;

    bool operator==(const ScenarioConfig&) const = default;
};

// Default three-node indoor setup: 60 GHz / 2.4 GHz bands, 2.5 mW transmit
// power, 90 deg sectors with 20 deg beams, 10 m symmetric geometry,
// lambda = nu = 0.5 obstacles/s.
ScenarioConfig default_scenario();

// Checks every type invariant; throws std::invalid_argument naming the
// offending field on the first violation.
void validate(const ScenarioConfig& cfg);

// Parses a scenario file (JSON, top-level "schema": 1). Missing sections and
// keys fall back to default_scenario(); angles are accepted in degrees
// (theta_deg / phi_deg) or radians (theta_rad / phi_rad). Unknown keys are
// rejected. The returned config is fully validated.
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Parses scenario text (same format as load_scenario).
ScenarioConfig parse_scenario(const std::string& text);

// Canonical serialization; load_scenario(write_scenario(c)) == c exactly.
// Angles are written in radians so the round trip is bit-precise.
std::string scenario_to_json(const ScenarioConfig& cfg);
void write_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

}  // namespace mmlink
