#pragma once

#include <span>
#include <vector>

#include "twrsim/random.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

double sample_mean(std::span<const double> xs);

/// Unbiased sample standard deviation (n-1 denominator). Requires n >= 2.
double sample_stddev(std::span<const double> xs);

/// Percentile bootstrap confidence interval for the sample std. Robust to
/// non-Gaussian (e.g. bimodal) samples, unlike a chi-square interval.
struct Interval {
    double low = 0.0;
    double high = 0.0;
};
Interval bootstrap_std_ci(std::span<const double> xs, RandomStream rng,
                          int resamples = 1000, double level = 0.99);

struct SummaryStats {
    TimeSpan mean;
    TimeSpan stddev;
    TimeSpan ci_low;  // bootstrap CI of the std
    TimeSpan ci_high;
    int n = 0;
};

/// Mean, std and bootstrap CI of the std. Requires n >= 2; the bootstrap
/// stream should be derived from the experiment seed so outputs stay
/// reproducible.
SummaryStats summarize(std::span<const TimeSpan> samples, RandomStream boot_rng,
                       int resamples = 1000, double level = 0.99);

/// Linear-interpolation quantile of a sorted sample, q in [0, 1].
double sorted_quantile(std::span<const double> sorted, double q);

double median(std::vector<double> xs);

} // namespace twrsim
