#include "mmlink/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmlink {

double path_gain_db(const BandParams& band, double distance_m, int n_obstacles,
                    double obstacle_loss_db)
{
    if (distance_m < 1.0) {
        throw std::domain_error("path_gain_db: distance below the 1 m reference distance");
    }
    if (n_obstacles < 0) {
        throw std::domain_error("path_gain_db: negative obstacle count");
    }
    const double spreading_db = 20.0 * std::log10(distance_m);
    const double atmo_db = band.atmo_db_per_km * (distance_m / 1000.0);
    return -band.ref_attenuation_db - spreading_db - atmo_db - n_obstacles * obstacle_loss_db;
}

double mainlobe_gain(const AntennaPattern& pattern)
{
    const double two_pi = 2.0 * kPi;
    return (two_pi - pattern.epsilon * (two_pi - pattern.theta_rad)) / pattern.theta_rad;
}

double alignment_overhead_s(const AntennaPattern& pattern)
{
    const double ratio = pattern.phi_rad / pattern.theta_rad;
    const double beams = std::ceil(ratio - 1e-9);
    return beams * beams * pattern.pilot_time_s;
}

double noise_power_dbm(double bandwidth_hz)
{
    if (!(bandwidth_hz > 0)) {
        throw std::domain_error("noise_power_dbm: bandwidth must be > 0");
    }
    return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

double link_distance_m(const Geometry& geometry, LinkId link)
{
    switch (link) {
        case LinkId::source_dest: return geometry.d_sd_m;
        case LinkId::source_relay: return geometry.d_sr_m;
        case LinkId::relay_dest: return geometry.d_rd_m;
    }
    throw std::logic_error("link_distance_m: bad link id");
}

LinkBudget link_snr(const ScenarioConfig& cfg, LinkId link, Band band, int n_obstacles)
{
    const BandParams& bp = band == Band::microwave ? cfg.microwave : cfg.mmwave;
    const double distance = link_distance_m(cfg.geometry, link);

    if (band == Band::mmwave && n_obstacles > 0) {
        // Obstacles are impenetrable at mmWave frequencies.
        return {-std::numeric_limits<double>::infinity(), 0.0, band};
    }

    const double gain_db = path_gain_db(bp, distance, n_obstacles, bp.obstacle_loss_db);

    double antenna_db = 0.0;
    if (band == Band::mmwave) {
        antenna_db = 10.0 * std::log10(mainlobe_gain(cfg.antenna));
        if (cfg.gain_both_ends) {
            antenna_db *= 2.0;
        }
    }

    const double power_dbm = 10.0 * std::log10(cfg.tx_power_mw);
    const double noise_dbm = noise_power_dbm(bp.bandwidth_hz);
    const double snr_db = power_dbm + gain_db + antenna_db - noise_dbm;
    return {gain_db, std::pow(10.0, snr_db / 10.0), band};
}

}  // namespace mmlink
