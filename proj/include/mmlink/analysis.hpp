#pragma once

#include "mmlink/blockage.hpp"
#include "mmlink/rates.hpp"

namespace mmlink {

enum class ThroughputChoice { fallback, relay, tie };

std::string choice_name(ThroughputChoice c);

struct McEstimate {
    double mean = 0.0;
    double half_width = 0.0; // 95% normal-approximation confidence half-width
};

// Per-slot throughput of both options plus the Monte Carlo cross-check.
struct ThroughputReport {
    double fallback_bits_per_slot = 0.0;
    double relay_bits_per_slot_approx = 0.0;
    McEstimate relay_bits_per_slot_mc;
    bool assumption1_satisfied = true;  // min sampled slot exceeds the overhead
    double truncated_slot_fraction = 0.0;
};

struct DecisionOutcome {
    ThroughputChoice choice = ThroughputChoice::tie;
    double margin_bits_per_slot = 0.0; // fallback minus relay, per slot
    BlockageStats stats;
    RateSet rates;
    double alignment_overhead_s = 0.0;
};

// Expected fallback throughput per virtual slot:
// C_dmuX * E[X] + C_dmY * E[Y].
double fallback_throughput(const RateSet& rates, const BlockageStats& stats);

// Expected relay throughput per virtual slot under the long-slot assumption:
// C_rm * (E[X] + E[Y] - T_a)/2, clamped at zero once the overhead consumes
// the whole slot.
double relay_throughput_approx(double c_rm_bps, const BlockageStats& stats, double t_a_s);

// Sample mean of C_rm * max((X_i + Y_i - T_a)/2, 0) over simulated slots.
McEstimate relay_throughput_mc(double c_rm_bps, const PeriodSamples& samples, double t_a_s);

// Fraction of sampled slots shorter than the alignment overhead.
double truncated_slot_fraction(const PeriodSamples& samples, double t_a_s);

// Throughput-optimal selection between fallback and relay. The sign of the
// margin matches the overhead-vs-rate-deficit comparison
//   (C_rm/2) T_a  vs  (C_rm/2 - C_dmuX) E[X] + (C_rm/2 - C_dmY) E[Y]
// whenever the long-slot approximation is not clamped.
DecisionOutcome throughput_decision(const RateSet& rates, const BlockageStats& stats,
                                    double t_a_s);

// Assembles the full report; MC columns come from the supplied samples.
ThroughputReport throughput_report(const RateSet& rates, const BlockageStats& stats,
                                   const PeriodSamples& samples, double t_a_s);

}  // namespace mmlink
