#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmlink/analysis.hpp"
#include "mmlink/blockage.hpp"
#include "mmlink/rates.hpp"

namespace mmlink {

// M|D|1 view of one option: constant bit service rate S, utilization
// rho = G/S, and the mean sojourn time (absent when rho >= 1).
struct DelayReport {
    double service_rate_fallback_bps = 0.0;
    double service_rate_relay_bps = 0.0;
    double utilization_fallback = 0.0;
    double utilization_relay = 0.0;
    std::optional<double> delay_fallback_s;
    std::optional<double> delay_relay_s;
};

enum class DelayChoice { fallback, relay, tie, infeasible };

std::string delay_choice_name(DelayChoice c);

// Time-shared service rate of the fallback option:
// C_dmuX * E[X]/E[T] + C_dmY * E[Y]/E[T].
double fallback_service_rate_bps(const RateSet& rates, const BlockageStats& stats);

// Relay service rate. Default mode charges the per-slot alignment overhead,
// C_rm * (E[T] - T_a) / (2 E[T]); paper_literal drops the overhead and
// reduces to C_rm/2 exactly.
double relay_service_rate_bps(double c_rm_bps, const BlockageStats& stats, double t_a_s,
                              bool paper_literal);

// Mean M|D|1 sojourn time (1/(2S)) (2-rho)/(1-rho); nullopt once rho >= 1.
std::optional<double> md1_delay_s(double offered_load_bps, double service_rate_bps);

struct DelayDecision {
    DelayReport report;
    DelayChoice choice = DelayChoice::infeasible;
};

// Builds both M|D|1 reports at the configured offered load and picks the
// option with the smaller delay; a lone stable option always wins. Rates are
// evaluated in the short-packet (finite-blocklength) regime.
DelayDecision delay_decision(const ScenarioConfig& cfg);

// As above with explicit blockage statistics, for regimes that no (lambda,
// nu) pair of the scenario reaches.
DelayDecision delay_decision_at(const ScenarioConfig& cfg, const BlockageStats& stats,
                                double offered_load_bps);

enum class RegionChoice {
    fallback_only,         // only fallback sustains the target rate
    relay_only,            // only relay sustains the target rate
    both_fallback_faster,  // both stable, fallback has lower delay
    both_relay_faster,     // both stable, relay has lower delay
    infeasible             // neither option sustains the target rate
};

std::string region_choice_name(RegionChoice c);

struct RegionCell {
    double theta_rad = 0.0;
    double blockage_fraction = 0.0;
    double nu_per_s = 0.0;
    RegionChoice choice = RegionChoice::infeasible;
    DelayReport report;
};

// Delay-optimal decision region over (beamwidth, blockage fraction) for a
// fixed target rate. Cells are ordered theta-major, fraction-minor.
struct RegionGrid {
    std::vector<double> theta_rad;
    std::vector<double> blockage_fraction;
    double target_rate_bps = 0.0;
    std::vector<RegionCell> cells;

    const RegionCell& at(std::size_t theta_idx, std::size_t fraction_idx) const;
};

// Evaluates one delay decision per grid cell at G = target_rate_bps.
// Blockage fractions are realized by solving for nu at the scenario's
// lambda; cells are evaluated concurrently but emitted in deterministic
// order. mean_slot_s_override pins E[T] instead, so each cell uses the
// direct period means (f*E[T], (1-f)*E[T]) — short-slot regimes that no nu
// reaches at the scenario's arrival rate.
RegionGrid decision_region(const ScenarioConfig& cfg, const std::vector<double>& theta_rad,
                           const std::vector<double>& blockage_fractions,
                           double target_rate_bps,
                           std::optional<double> mean_slot_s_override = std::nullopt);

}  // namespace mmlink
