#pragma once

#include "twrsim/time.hpp"

namespace twrsim {

/// Guard cap on configured clock drifts. UWB-class hardware stays below
/// 20 ppm; values above the cap are treated as configuration mistakes.
inline constexpr double kDriftCapPpm = 100.0;

/// Constant-rate clock: every true duration x is recorded as factor() * x.
struct ClockModel {
    double drift_ppm = 0.0;

    constexpr double factor() const { return 1.0 + drift_ppm * 1e-6; }
};

/// The duration x as measured by the given clock.
constexpr TimeSpan skew(ClockModel clock, TimeSpan x) { return x * clock.factor(); }

/// Throws ConfigError when the drift is non-finite or beyond the cap.
void validate_clock(ClockModel clock, double cap_ppm = kDriftCapPpm);

} // namespace twrsim
