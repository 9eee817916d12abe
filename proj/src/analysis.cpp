#include "mmlink/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace mmlink {

std::string choice_name(ThroughputChoice c)
{
    switch (c) {
        case ThroughputChoice::fallback: return "fallback";
        case ThroughputChoice::relay: return "relay";
        case ThroughputChoice::tie: return "tie";
    }
    return "?";
}

double fallback_throughput(const RateSet& rates, const BlockageStats& stats)
{
    return rates.c_d_mu_x_bps * stats.mean_nonlos_s + rates.c_d_m_y_bps * stats.mean_los_s;
}

double relay_throughput_approx(double c_rm_bps, const BlockageStats& stats, double t_a_s)
{
    if (!(t_a_s >= 0)) {
        throw std::domain_error("relay_throughput_approx: overhead must be >= 0");
    }
    if (stats.mean_slot_s <= t_a_s) {
        return 0.0;
    }
    return c_rm_bps * (stats.mean_slot_s - t_a_s) / 2.0;
}

McEstimate relay_throughput_mc(double c_rm_bps, const PeriodSamples& samples, double t_a_s)
{
    if (samples.n_slots == 0) {
        throw std::invalid_argument("relay_throughput_mc: empty samples");
    }
    const std::size_t n = samples.n_slots;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double slot = samples.nonlos_s[i] + samples.los_s[i];
        const double bits = c_rm_bps * std::max((slot - t_a_s) / 2.0, 0.0);
        sum += bits;
        sum_sq += bits * bits;
    }
    const double mean = sum / double(n);
    const double var = std::max(0.0, sum_sq / double(n) - mean * mean);
    const double half_width = 1.96 * std::sqrt(var / double(n));
    return {mean, half_width};
}

double truncated_slot_fraction(const PeriodSamples& samples, double t_a_s)
{
    std::size_t truncated = 0;
    for (std::size_t i = 0; i < samples.n_slots; ++i) {
        if (samples.nonlos_s[i] + samples.los_s[i] < t_a_s) {
            ++truncated;
        }
    }
    return double(truncated) / double(samples.n_slots);
}

DecisionOutcome throughput_decision(const RateSet& rates, const BlockageStats& stats,
                                    double t_a_s)
{
    DecisionOutcome out;
    out.stats = stats;
    out.rates = rates;
    out.alignment_overhead_s = t_a_s;
    out.margin_bits_per_slot =
        fallback_throughput(rates, stats) - relay_throughput_approx(rates.c_rm_bps, stats, t_a_s);
    if (out.margin_bits_per_slot > 0) {
        out.choice = ThroughputChoice::fallback;
    } else if (out.margin_bits_per_slot < 0) {
        out.choice = ThroughputChoice::relay;
    } else {
        out.choice = ThroughputChoice::tie;
    }
    return out;
}

ThroughputReport throughput_report(const RateSet& rates, const BlockageStats& stats,
                                   const PeriodSamples& samples, double t_a_s)
{
    ThroughputReport rep;
    rep.fallback_bits_per_slot = fallback_throughput(rates, stats);
    rep.relay_bits_per_slot_approx = relay_throughput_approx(rates.c_rm_bps, stats, t_a_s);
    rep.relay_bits_per_slot_mc = relay_throughput_mc(rates.c_rm_bps, samples, t_a_s);
    rep.assumption1_satisfied = samples.min_slot() > t_a_s;
    rep.truncated_slot_fraction = truncated_slot_fraction(samples, t_a_s);
    return rep;
}

}  // namespace mmlink
