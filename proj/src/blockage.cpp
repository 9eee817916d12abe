#include "mmlink/blockage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

#include "mmlink/textio.hpp"

namespace mmlink {

double expected_nonlos_s(const ObstacleProcess& proc)
{
    return std::expm1(proc.lambda_per_s / proc.nu_per_s) / proc.lambda_per_s;
}

double expected_los_s(const ObstacleProcess& proc)
{
    return 1.0 / proc.lambda_per_s;
}

BlockageStats blockage_stats(const ObstacleProcess& proc)
{
    BlockageStats s;
    s.mean_nonlos_s = expected_nonlos_s(proc);
    s.mean_los_s = expected_los_s(proc);
    s.mean_slot_s = s.mean_nonlos_s + s.mean_los_s;
    s.blockage_fraction = s.mean_nonlos_s / s.mean_slot_s;
    return s;
}

double nu_for_blockage_fraction(double lambda_per_s, double fraction)
{
    if (!(lambda_per_s > 0)) {
        throw std::domain_error("nu_for_blockage_fraction: lambda must be > 0");
    }
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::domain_error("nu_for_blockage_fraction: fraction " +
                                format_number(fraction) + " not realizable, need 0 < f < 1");
    }
    // f = E[X]/E[T] reduces to 1 - exp(-lambda/nu), so the map inverts in
    // closed form.
    return -lambda_per_s / std::log1p(-fraction);
}

BlockageStats stats_from_means(double mean_nonlos_s, double mean_los_s)
{
    if (!(mean_nonlos_s > 0) || !(mean_los_s > 0)) {
        throw std::domain_error("stats_from_means: mean periods must be > 0");
    }
    BlockageStats s;
    s.mean_nonlos_s = mean_nonlos_s;
    s.mean_los_s = mean_los_s;
    s.mean_slot_s = mean_nonlos_s + mean_los_s;
    s.blockage_fraction = mean_nonlos_s / s.mean_slot_s;
    return s;
}

double PeriodSamples::horizon_s() const
{
    return std::accumulate(nonlos_s.begin(), nonlos_s.end(), 0.0) +
           std::accumulate(los_s.begin(), los_s.end(), 0.0);
}

double PeriodSamples::mean_nonlos() const
{
    return std::accumulate(nonlos_s.begin(), nonlos_s.end(), 0.0) / double(nonlos_s.size());
}

double PeriodSamples::mean_los() const
{
    return std::accumulate(los_s.begin(), los_s.end(), 0.0) / double(los_s.size());
}

double PeriodSamples::min_slot() const
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_slots; ++i) {
        m = std::min(m, nonlos_s[i] + los_s[i]);
    }
    return m;
}

double PeriodSamples::busy_fraction() const
{
    const double busy = std::accumulate(nonlos_s.begin(), nonlos_s.end(), 0.0);
    return busy / horizon_s();
}

double PeriodSamples::mean_slot_ratio() const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n_slots; ++i) {
        acc += nonlos_s[i] / (nonlos_s[i] + los_s[i]);
    }
    return acc / double(n_slots);
}

double PeriodSamples::mean_occupancy() const
{
    return obstacle_seconds / horizon_s();
}

namespace {

// Exponential variates by inversion on a documented uniform mapping, instead
// of std::exponential_distribution whose stream is implementation-defined.
class ExpDraw {
public:
    explicit ExpDraw(std::uint64_t seed) : eng_(seed) {}

    double operator()(double rate)
    {
        const double u = (double(eng_() >> 11) + 0.5) * 0x1.0p-53; // u in (0,1)
        return -std::log(u) / rate;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace

PeriodSamples simulate_periods(const ObstacleProcess& proc, std::size_t n_slots,
                               std::uint64_t seed)
{
    if (n_slots == 0) {
        throw std::invalid_argument("simulate_periods: n_slots must be >= 1");
    }

    PeriodSamples out;
    out.seed = seed;
    out.n_slots = n_slots;
    out.nonlos_s.reserve(n_slots);
    out.los_s.reserve(n_slots);

    ExpDraw draw(seed);
    const double lambda = proc.lambda_per_s;
    const double nu = proc.nu_per_s;

    // Min-heap of pending departure times; size == current obstacle count.
    std::priority_queue<double, std::vector<double>, std::greater<double>> departures;

    double now = 0.0;
    double next_arrival = draw(lambda); // empty system; first arrival opens slot 0
    double slot_start = 0.0;
    double nonlos_end = 0.0;
    double occupancy_integral = 0.0;
    bool first_slot_opened = false;

    // The loop stops at the arrival that completes Y_{n-1}, which is also the
    // start of slot n, so the integral covers exactly [slot 0 start, slot n
    // start] (the empty stretch before slot 0 contributes zero).
    while (out.los_s.size() < n_slots) {
        if (departures.empty() || next_arrival <= departures.top()) {
            // Arrival. Ties resolve to the arrival so the count never touches
            // zero at a shared instant.
            const double t = next_arrival;
            occupancy_integral += double(departures.size()) * (t - now);
            now = t;
            if (departures.empty()) {
                if (first_slot_opened) {
                    out.los_s.push_back(t - nonlos_end);
                }
                slot_start = t;
                first_slot_opened = true;
            }
            departures.push(now + draw(nu));
            next_arrival = now + draw(lambda);
        } else {
            const double t = departures.top();
            departures.pop();
            occupancy_integral += double(departures.size() + 1) * (t - now);
            now = t;
            if (departures.empty()) {
                out.nonlos_s.push_back(t - slot_start);
                nonlos_end = t;
            }
        }
    }

    out.obstacle_seconds = occupancy_integral;
    return out;
}

double sample_std(const std::vector<double>& values)
{
    if (values.size() < 2) {
        return 0.0;
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
    double acc = 0.0;
    for (double v : values) {
        acc += (v - mean) * (v - mean);
    }
    return std::sqrt(acc / double(values.size() - 1));
}

void write_periods_csv(const PeriodSamples& samples, const std::filesystem::path& path)
{
    CsvWriter csv(path, {"slot_index", "x_seconds", "y_seconds"});
    for (std::size_t i = 0; i < samples.n_slots; ++i) {
        csv.write_row({format_number(static_cast<unsigned long long>(i)),
                       format_number(samples.nonlos_s[i]), format_number(samples.los_s[i])});
    }
}

}  // namespace mmlink
