#pragma once

#include "twrsim/noise_model.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Effective per-directed-link noise moments (after mixing in any bias
/// component), the inputs of the closed-form predictors.
struct NoiseSummary {
    TimeSpan mu_ab, mu_ba, mu_al, mu_bl;
    TimeSpan sigma_ab, sigma_ba, sigma_al, sigma_bl;

    static NoiseSummary from_links(const LinkNoiseModel& ab, const LinkNoiseModel& ba,
                                   const LinkNoiseModel& al, const LinkNoiseModel& bl);
};

/// Response-delay ratio delay_b / (delay_a + delay_b), restricted to (0, 1).
class DelayRatio {
public:
    explicit DelayRatio(double r);
    static DelayRatio from_delays(TimeSpan delay_a, TimeSpan delay_b);

    double value() const { return r_; }

private:
    double r_;
};

/// Expected ToF error of the double-sided estimator.
TimeSpan predict_twr_bias(const NoiseSummary& n);

/// Variance of the double-sided ToF estimator, in seconds^2. Quadratic in the
/// delay ratio with its minimum at 0.5.
double predict_twr_var(const NoiseSummary& n, DelayRatio ratio);

/// Expected TDoA error of the overhearing estimator. The active-link means
/// enter with opposite signs, so a symmetric active-link bias cancels.
TimeSpan predict_tdoa_bias(const NoiseSummary& n);

/// Variance of the overhearing TDoA estimator, in seconds^2: the ToF variance
/// plus the listener's two extra receptions. With equal noise on all links
/// and symmetric delays this is exactly five times the ToF variance.
double predict_tdoa_var(const NoiseSummary& n, DelayRatio ratio);

/// Argmin of both variance predictors over the delay ratio.
DelayRatio optimal_ratio();

inline TimeSpan std_from_var(double var_sec2) {
    return TimeSpan::seconds(std::sqrt(var_sec2));
}

} // namespace twrsim
