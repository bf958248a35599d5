#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twrsim/time.hpp"
#include "twrsim/timestamp_log.hpp"

namespace twrsim {

/// Ordinary least-squares fit of receive times against transmit times for one
/// window of a directed link.
struct ClockFit {
    TimeSpan offset;
    double drift = 1.0;    // rate of the receiver clock relative to the transmitter
    TimeSpan residual_std; // sqrt(SS_res / (n - 2)), gauges the reception noise std
    int n_points = 0;
};

/// Requires equal lengths >= 3 and strictly increasing tx times. Throws
/// InsufficientDataError / ConfigError on violations.
ClockFit fit_clock(std::span<const TimeSpan> tx_times, std::span<const TimeSpan> rx_times);

inline constexpr TimeSpan kDefaultFitWindow = TimeSpan::millis(60);
inline constexpr int kMinWindowPoints = 10;

/// Timestamping-noise std of the single directed link contained in `log`:
/// receptions are grouped into distinct windows, each window is fitted, and
/// the median residual std over windows with at least kMinWindowPoints
/// receptions is returned. A linear clock drift is absorbed by the fits.
/// Throws InsufficientDataError when no window qualifies.
TimeSpan estimate_link_sigma(const TimestampLog& log, TimeSpan window = kDefaultFitWindow);

/// All (tx node, rx node) pairs present in a log.
std::vector<std::pair<std::string, std::string>> directed_links(const TimestampLog& log);

/// Restricts a multi-link log to one directed link (tx events on tx_node
/// toward rx_node and matching rx events).
TimestampLog extract_link(const TimestampLog& log, const std::string& tx_node,
                          const std::string& rx_node);

/// Noise mean implied by a ranging sample mean versus the known flight time.
/// Interpreted as the bias of both directions of the link.
inline TimeSpan estimate_link_mu(TimeSpan twr_sample_mean, TimeSpan ground_truth_tof) {
    return twr_sample_mean - ground_truth_tof;
}

/// Coefficient of determination 1 - SS_res/SS_tot; may be negative. Requires
/// equal lengths >= 2 and a non-constant observed series.
double r2_score(std::span<const double> predicted, std::span<const double> observed);

} // namespace twrsim
