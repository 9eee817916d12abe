#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mmlink/scenario.hpp"

namespace mmlink {

// Closed-form non-LoS/LoS statistics of the M|M|inf blockage queue.
struct BlockageStats {
    double mean_nonlos_s = 0.0;     // E[X], mean busy period
    double mean_los_s = 0.0;        // E[Y] = 1/lambda, mean idle period
    double mean_slot_s = 0.0;       // E[T] = E[X] + E[Y]
    double blockage_fraction = 0.0; // E[X]/E[T]
};

// Mean busy period: (1/lambda) * (exp(lambda/nu) - 1).
double expected_nonlos_s(const ObstacleProcess& proc);

// Mean idle period: 1/lambda.
double expected_los_s(const ObstacleProcess& proc);

BlockageStats blockage_stats(const ObstacleProcess& proc);

// The fraction map is f = 1 - exp(-lambda/nu); this returns the nu realizing
// a given fraction at fixed lambda. Throws std::domain_error outside (0,1).
double nu_for_blockage_fraction(double lambda_per_s, double fraction);

// Direct construction from mean periods, for regimes that are not reachable
// by any (lambda, nu) pair of interest.
BlockageStats stats_from_means(double mean_nonlos_s, double mean_los_s);

// One simulated realization of the blockage queue: n_slots consecutive
// (X_i, Y_i) pairs plus the occupancy integral over the sampled horizon.
//
// RNG identity: std::mt19937_64 seeded with `seed`; exponential variates are
// drawn by inversion, u = (next() >> 11 + 0.5) * 2^-53, sample = -ln(u)/rate,
// so identical (seed, lambda, nu, n_slots) reproduce identical samples.
struct PeriodSamples {
    std::vector<double> nonlos_s;
    std::vector<double> los_s;
    std::uint64_t seed = 0;
    std::size_t n_slots = 0;
    double obstacle_seconds = 0.0; // integral of x(t) dt over the horizon

    double horizon_s() const;       // sum of all X_i + Y_i
    double mean_nonlos() const;
    double mean_los() const;
    double min_slot() const;        // min_i (X_i + Y_i)
    double busy_fraction() const;   // sum(X) / horizon  (ratio of means)
    double mean_slot_ratio() const; // mean_i of X_i/(X_i+Y_i) (mean of ratios)
    double mean_occupancy() const;  // time-average obstacle count
};

// Event-driven simulation: Poisson(lambda) arrivals, independent
// Exponential(nu) sojourns. Starts empty at an LoS instant; slot i opens at
// the i-th 0->1 transition of the obstacle count, X_i runs until the count
// returns to 0, Y_i until the next arrival.
PeriodSamples simulate_periods(const ObstacleProcess& proc, std::size_t n_slots,
                               std::uint64_t seed);

// CSV export, columns: slot_index, x_seconds, y_seconds.
void write_periods_csv(const PeriodSamples& samples, const std::filesystem::path& path);

// Unbiased sample standard deviation.
double sample_std(const std::vector<double>& values);

}  // namespace mmlink
