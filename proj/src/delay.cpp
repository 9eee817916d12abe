#include "mmlink/delay.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mmlink/channel.hpp"

namespace mmlink {

std::string delay_choice_name(DelayChoice c)
{
    switch (c) {
        case DelayChoice::fallback: return "fallback";
        case DelayChoice::relay: return "relay";
        case DelayChoice::tie: return "tie";
        case DelayChoice::infeasible: return "infeasible";
    }
    return "?";
}

std::string region_choice_name(RegionChoice c)
{
    switch (c) {
        case RegionChoice::fallback_only: return "fallback";
        case RegionChoice::relay_only: return "relay";
        case RegionChoice::both_fallback_faster: return "both-feasible-fallback-faster";
        case RegionChoice::both_relay_faster: return "both-feasible-relay-faster";
        case RegionChoice::infeasible: return "infeasible";
    }
    return "?";
}

double fallback_service_rate_bps(const RateSet& rates, const BlockageStats& stats)
{
    return rates.c_d_mu_x_bps * stats.mean_nonlos_s / stats.mean_slot_s +
           rates.c_d_m_y_bps * stats.mean_los_s / stats.mean_slot_s;
}

double relay_service_rate_bps(double c_rm_bps, const BlockageStats& stats, double t_a_s,
                              bool paper_literal)
{
    if (paper_literal) {
        // E[X+Y] cancels E[T]: the printed form carries no overhead.
        return c_rm_bps / 2.0;
    }
    if (t_a_s >= stats.mean_slot_s) {
        return 0.0;
    }
    return c_rm_bps * (stats.mean_slot_s - t_a_s) / (2.0 * stats.mean_slot_s);
}

std::optional<double> md1_delay_s(double offered_load_bps, double service_rate_bps)
{
    if (!(service_rate_bps > 0)) {
        throw std::domain_error("md1_delay_s: service rate must be > 0");
    }
    if (!(offered_load_bps >= 0)) {
        throw std::domain_error("md1_delay_s: offered load must be >= 0");
    }
    const double rho = offered_load_bps / service_rate_bps;
    if (rho >= 1.0) {
        return std::nullopt;
    }
    return (1.0 / (2.0 * service_rate_bps)) * (2.0 - rho) / (1.0 - rho);
}

namespace {

DelayReport build_report(const RateSet& rates, const BlockageStats& stats, double t_a_s,
                         double offered_load_bps, bool eq15_paper_literal)
{
    DelayReport rep;
    rep.service_rate_fallback_bps = fallback_service_rate_bps(rates, stats);
    rep.service_rate_relay_bps =
        relay_service_rate_bps(rates.c_rm_bps, stats, t_a_s, eq15_paper_literal);
    rep.utilization_fallback = offered_load_bps / rep.service_rate_fallback_bps;
    rep.utilization_relay = rep.service_rate_relay_bps > 0
                                ? offered_load_bps / rep.service_rate_relay_bps
                                : std::numeric_limits<double>::infinity();
    rep.delay_fallback_s = md1_delay_s(offered_load_bps, rep.service_rate_fallback_bps);
    rep.delay_relay_s = rep.service_rate_relay_bps > 0
                            ? md1_delay_s(offered_load_bps, rep.service_rate_relay_bps)
                            : std::nullopt;
    return rep;
}

DelayChoice pick(const DelayReport& rep)
{
    const bool fb = rep.delay_fallback_s.has_value();
    const bool rl = rep.delay_relay_s.has_value();
    if (!fb && !rl) return DelayChoice::infeasible;
    if (fb && !rl) return DelayChoice::fallback;
    if (!fb && rl) return DelayChoice::relay;
    if (*rep.delay_fallback_s < *rep.delay_relay_s) return DelayChoice::fallback;
    if (*rep.delay_relay_s < *rep.delay_fallback_s) return DelayChoice::relay;
    return DelayChoice::tie;
}

// Finite-blocklength rates regardless of the configured throughput regime:
// the delay model is a short-packet model.
RateSet short_packet_rates(const ScenarioConfig& cfg)
{
    ScenarioConfig c = cfg;
    c.traffic.long_packet_mode = false;
    return rate_set(c);
}

}  // namespace

DelayDecision delay_decision_at(const ScenarioConfig& cfg, const BlockageStats& stats,
                                double offered_load_bps)
{
    const RateSet rates = short_packet_rates(cfg);
    const double t_a = alignment_overhead_s(cfg.antenna);
    DelayDecision d;
    d.report = build_report(rates, stats, t_a, offered_load_bps, cfg.eq15_paper_literal);
    d.choice = pick(d.report);
    return d;
}

DelayDecision delay_decision(const ScenarioConfig& cfg)
{
    return delay_decision_at(cfg, blockage_stats(cfg.obstacles), cfg.traffic.offered_load_bps);
}

const RegionCell& RegionGrid::at(std::size_t theta_idx, std::size_t fraction_idx) const
{
    return cells.at(theta_idx * blockage_fraction.size() + fraction_idx);
}

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, std::max<std::size_t>(1, n / 16));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

RegionGrid decision_region(const ScenarioConfig& cfg, const std::vector<double>& theta_rad,
                           const std::vector<double>& blockage_fractions,
                           double target_rate_bps,
                           std::optional<double> mean_slot_s_override)
{
    if (theta_rad.empty() || blockage_fractions.empty()) {
        throw std::invalid_argument("decision_region: axes must be non-empty");
    }
    for (double theta : theta_rad) {
        if (!(theta > 0) || !(theta <= cfg.antenna.phi_rad)) {
            throw std::invalid_argument(
                "decision_region: theta axis value outside (0, phi]");
        }
    }
    if (mean_slot_s_override && !(*mean_slot_s_override > 0)) {
        throw std::domain_error("decision_region: slot override must be > 0");
    }

    RegionGrid grid;
    grid.theta_rad = theta_rad;
    grid.blockage_fraction = blockage_fractions;
    grid.target_rate_bps = target_rate_bps;
    grid.cells.resize(theta_rad.size() * blockage_fractions.size());

    // Realizability check up front so a bad cell is reported by name before
    // any work is spawned. With a pinned slot length the fraction splits the
    // slot directly and the arrival rate is implied per cell.
    std::vector<BlockageStats> stats(blockage_fractions.size());
    std::vector<double> nus(blockage_fractions.size());
    for (std::size_t j = 0; j < blockage_fractions.size(); ++j) {
        try {
            const double f = blockage_fractions[j];
            if (mean_slot_s_override) {
                const double slot = *mean_slot_s_override;
                stats[j] = stats_from_means(f * slot, (1.0 - f) * slot);
                nus[j] = nu_for_blockage_fraction(1.0 / stats[j].mean_los_s, f);
            } else {
                nus[j] = nu_for_blockage_fraction(cfg.obstacles.lambda_per_s, f);
                stats[j] = blockage_stats({cfg.obstacles.lambda_per_s, nus[j]});
            }
        } catch (const std::domain_error&) {
            throw std::domain_error("decision_region: blockage fraction " +
                                    std::to_string(blockage_fractions[j]) +
                                    " (column " + std::to_string(j) + ") is not realizable");
        }
    }

    const std::size_t n_fraction = blockage_fractions.size();
    parallel_for(grid.cells.size(), [&](std::size_t idx) {
        const std::size_t i = idx / n_fraction;
        const std::size_t j = idx % n_fraction;

        ScenarioConfig cell_cfg = cfg;
        cell_cfg.antenna.theta_rad = theta_rad[i];
        cell_cfg.obstacles.nu_per_s = nus[j];

        RegionCell cell;
        cell.theta_rad = theta_rad[i];
        cell.blockage_fraction = blockage_fractions[j];
        cell.nu_per_s = nus[j];

        const DelayDecision d = delay_decision_at(cell_cfg, stats[j], target_rate_bps);
        cell.report = d.report;
        switch (d.choice) {
            case DelayChoice::fallback:
                cell.choice = d.report.delay_relay_s ? RegionChoice::both_fallback_faster
                                                     : RegionChoice::fallback_only;
                break;
            case DelayChoice::relay:
                cell.choice = d.report.delay_fallback_s ? RegionChoice::both_relay_faster
                                                        : RegionChoice::relay_only;
                break;
            case DelayChoice::tie:
                // exact delay ties land on the fallback side of the boundary
                cell.choice = RegionChoice::both_fallback_faster;
                break;
            case DelayChoice::infeasible:
                cell.choice = RegionChoice::infeasible;
                break;
        }
        grid.cells[idx] = cell;
    });

    return grid;
}

}  // namespace mmlink
