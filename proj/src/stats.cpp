#include "twrsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "twrsim/errors.hpp"

namespace twrsim {

double sample_mean(std::span<const double> xs) {
    if (xs.empty())
        throw InsufficientDataError("mean of an empty sample");
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2)
        throw InsufficientDataError("sample std requires at least two values");
    const double mean = sample_mean(xs);
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty())
        throw InsufficientDataError("quantile of an empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double median(std::vector<double> xs) {
    if (xs.empty())
        throw InsufficientDataError("median of an empty sample");
    std::sort(xs.begin(), xs.end());
    return sorted_quantile(xs, 0.5);
}

Interval bootstrap_std_ci(std::span<const double> xs, RandomStream rng, int resamples,
                          double level) {
    const std::size_t n = xs.size();
    if (n < 2)
        throw InsufficientDataError("bootstrap CI requires at least two values");
    if (resamples < 2 || !(level > 0.0 && level < 1.0))
        throw ConfigError("invalid bootstrap parameters");

    std::vector<double> stds(static_cast<std::size_t>(resamples));
    std::vector<double> resample(n);
    for (auto& s : stds) {
        for (auto& v : resample) {
            const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
            v = xs[std::min(idx, n - 1)];
        }
        s = sample_stddev(resample);
    }
    std::sort(stds.begin(), stds.end());
    const double alpha = 1.0 - level;
    return {sorted_quantile(stds, alpha / 2.0), sorted_quantile(stds, 1.0 - alpha / 2.0)};
}

SummaryStats summarize(std::span<const TimeSpan> samples, RandomStream boot_rng,
                       int resamples, double level) {
    std::vector<double> xs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        xs[i] = samples[i].sec();

    SummaryStats out;
    out.n = static_cast<int>(xs.size());
    out.mean = TimeSpan::seconds(sample_mean(xs));
    out.stddev = TimeSpan::seconds(sample_stddev(xs));
    const Interval ci = bootstrap_std_ci(xs, boot_rng, resamples, level);
    out.ci_low = TimeSpan::seconds(ci.low);
    out.ci_high = TimeSpan::seconds(ci.high);
    return out;
}

} // namespace twrsim
