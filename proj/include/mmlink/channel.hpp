#pragma once

#include "mmlink/scenario.hpp"

namespace mmlink {

enum class LinkId { source_dest, source_relay, relay_dest };

struct LinkBudget {
    double gain_db = 0.0;    // channel gain in dB (negative); -inf when blocked
    double snr_linear = 0.0; // 0 when the link is unusable
    Band band = Band::microwave;
};

// Deterministic channel gain in dB: reference attenuation at 1 m, 20log10
// distance spreading, atmospheric absorption (dB/km), and per-obstacle
// penetration loss. Throws std::domain_error below the 1 m reference.
double path_gain_db(const BandParams& band, double distance_m, int n_obstacles,
                    double obstacle_loss_db);

// Main-lobe gain of the ideal sector pattern: (2pi - eps*(2pi - theta))/theta.
double mainlobe_gain(const AntennaPattern& pattern);

// Beam-training overhead: ceil(phi/theta)^2 * T_p. The ratio is nudged by
// 1e-9 before the ceiling so exact integer phi/theta survives the
// degree-to-radian round trip.
double alignment_overhead_s(const AntennaPattern& pattern);

// Thermal noise floor, -174 dBm/Hz integrated over the bandwidth (zero noise
// figure).
double noise_power_dbm(double bandwidth_hz);

// Link budget for one link of the three-node scenario. Microwave links are
// omnidirectional (unit antenna gain, finite per-obstacle loss); mmWave links
// use the main-lobe gain (squared when gain_both_ends is set) and are treated
// as impenetrable when any obstacle is present (SNR = 0).
LinkBudget link_snr(const ScenarioConfig& cfg, LinkId link, Band band, int n_obstacles);

double link_distance_m(const Geometry& geometry, LinkId link);

}  // namespace mmlink
