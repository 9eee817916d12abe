#include "mmlink/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmlink/channel.hpp"

namespace mmlink {

namespace {

constexpr double kLog2E = 1.4426950408889634073599246810018921374;
constexpr double kSqrt2 = 1.4142135623730950488016887242096980786;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110452530;

double gaussian_tail(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

// Acklam's rational approximation of the inverse standard normal CDF,
// |relative error| < 1.15e-9 over (0,1). Used as the starting point only.
double norm_inv_estimate(double p)
{
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

// Q^{-1} on p <= 0.5 (x >= 0): polish the estimate with Newton on
// Q(x) - p = 0. erfc is fully accurate on this half, two steps reach
// machine precision. Deep in the tail (p below ~1e-250) the density
// underflows and the rational estimate is returned as is.
double q_inverse_upper_half(double p)
{
    double x = -norm_inv_estimate(p);
    for (int i = 0; i < 2; ++i) {
        const double pdf = gaussian_pdf(x);
        if (pdf < std::numeric_limits<double>::min()) {
            break;
        }
        x += (gaussian_tail(x) - p) / pdf;
    }
    return x;
}

}  // namespace

double q_inverse(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("q_inverse: p must lie in (0,1)");
    }
    if (p == 0.5) {
        return 0.0;
    }
    // 1-p is exact for p >= 0.5 (Sterbenz), so the reflection loses nothing.
    return p < 0.5 ? q_inverse_upper_half(p) : -q_inverse_upper_half(1.0 - p);
}

double shannon_rate_bps(double bandwidth_hz, double snr_linear)
{
    if (!(snr_linear >= 0)) {
        throw std::domain_error("shannon_rate_bps: SNR must be >= 0");
    }
    return bandwidth_hz * std::log1p(snr_linear) * kLog2E;
}

double channel_dispersion(double snr_linear)
{
    if (!(snr_linear >= 0)) {
        throw std::domain_error("channel_dispersion: SNR must be >= 0");
    }
    const double s1 = snr_linear + 1.0;
    return 0.5 * snr_linear * (snr_linear + 2.0) / (s1 * s1) * kLog2E;
}

double finite_blocklength_rate_bps(double bandwidth_hz, double snr_linear, double packet_bits,
                                   double packet_error_prob, bool paper_literal)
{
    if (!(packet_bits >= 1)) {
        throw std::domain_error("finite_blocklength_rate_bps: packet size must be >= 1 bit");
    }
    const double capacity = std::log1p(snr_linear) * kLog2E;
    const double penalty =
        std::sqrt(channel_dispersion(snr_linear) / packet_bits) * q_inverse(packet_error_prob);
    const double log2_l = std::log2(packet_bits);
    const double correction = paper_literal ? log2_l : log2_l / (2.0 * packet_bits);
    return std::max(0.0, bandwidth_hz * (capacity - penalty + correction));
}

namespace {

double regime_rate_bps(double bandwidth_hz, double snr_linear, const TrafficParams& traffic,
                       bool eq12_paper_literal)
{
    if (traffic.long_packet_mode) {
        return shannon_rate_bps(bandwidth_hz, snr_linear);
    }
    return finite_blocklength_rate_bps(bandwidth_hz, snr_linear, traffic.packet_bits,
                                       traffic.packet_error_prob, eq12_paper_literal);
}

}  // namespace

double relay_rate_bps(double bandwidth_hz, double snr_sr, double snr_rd,
                      const TrafficParams& traffic, bool eq12_paper_literal)
{
    return std::min(regime_rate_bps(bandwidth_hz, snr_sr, traffic, eq12_paper_literal),
                    regime_rate_bps(bandwidth_hz, snr_rd, traffic, eq12_paper_literal));
}

RateSet rate_set(const ScenarioConfig& cfg)
{
    RateSet rs;
    rs.regime = cfg.traffic.long_packet_mode ? Regime::long_packet : Regime::short_packet;

    // Microwave direct link during a non-LoS period: evaluated with a single
    // obstacle present at the configured (default zero) penetration loss.
    const LinkBudget mu = link_snr(cfg, LinkId::source_dest, Band::microwave, 1);
    const LinkBudget mm = link_snr(cfg, LinkId::source_dest, Band::mmwave, 0);
    const LinkBudget sr = link_snr(cfg, LinkId::source_relay, Band::mmwave, 0);
    const LinkBudget rd = link_snr(cfg, LinkId::relay_dest, Band::mmwave, 0);

    rs.c_d_mu_x_bps =
        regime_rate_bps(cfg.microwave.bandwidth_hz, mu.snr_linear, cfg.traffic, cfg.eq12_paper_literal);
    rs.c_d_m_y_bps =
        regime_rate_bps(cfg.mmwave.bandwidth_hz, mm.snr_linear, cfg.traffic, cfg.eq12_paper_literal);
    rs.c_rm_bps = relay_rate_bps(cfg.mmwave.bandwidth_hz, sr.snr_linear, rd.snr_linear,
                                 cfg.traffic, cfg.eq12_paper_literal);
    return rs;
}

}  // namespace mmlink
