#pragma once

#include "mmlink/scenario.hpp"

namespace mmlink {

enum class Regime { long_packet, short_packet };

// The three achievable rates of the scenario: microwave direct during
// non-LoS, mmWave direct during LoS, and the two-hop mmWave relay rate.
struct RateSet {
    double c_d_mu_x_bps = 0.0;
    double c_d_m_y_bps = 0.0;
    double c_rm_bps = 0.0;
    Regime regime = Regime::long_packet;
};

// W * log2(1 + SNR).
double shannon_rate_bps(double bandwidth_hz, double snr_linear);

// Inverse of the standard Gaussian tail Q(x) = 0.5*erfc(x/sqrt(2)).
// Rational initial guess refined by Newton steps on erfc; absolute error is
// far below 1e-6 across p in [1e-12, 1-1e-12]. Throws outside (0,1).
double q_inverse(double p);

// Channel dispersion V = (SNR/2) * (SNR+2)/(SNR+1)^2 * log2(e).
double channel_dispersion(double snr_linear);

// Normal-approximation achievable rate for L-bit packets at packet error
// probability p_b, clamped at zero. The default mode uses the
// log2(L)/(2L) correction term; paper_literal applies +log2(L) instead.
double finite_blocklength_rate_bps(double bandwidth_hz, double snr_linear, double packet_bits,
                                   double packet_error_prob, bool paper_literal);

// Two-hop rate with equal per-hop transmission times: W * min of the per-hop
// spectral efficiencies under the regime selected by `traffic`.
double relay_rate_bps(double bandwidth_hz, double snr_sr, double snr_rd,
                      const TrafficParams& traffic, bool eq12_paper_literal);

// Assembles the scenario's RateSet: microwave direct evaluated with one
// obstacle present (blockage period), mmWave direct and both relay hops in
// LoS. Regime follows traffic.long_packet_mode.
RateSet rate_set(const ScenarioConfig& cfg);

}  // namespace mmlink
