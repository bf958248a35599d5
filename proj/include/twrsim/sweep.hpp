#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twrsim/estimators.hpp"
#include "twrsim/scenario.hpp"
#include "twrsim/stats.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

enum class Obstacle { none, on_ab, on_al, on_bl };

std::string_view name(Obstacle o);
Obstacle obstacle_from_name(std::string_view n);

/// Default delay-ratio grid: the extremes 0.001/0.999 plus 21 evenly spaced
/// points from 0.025 to 0.975.
std::vector<double> default_ratio_grid();

/// Monte-Carlo sweep over response-delay ratios at a fixed total delay.
///
/// Per trial, clock drifts are drawn from N(0, drift_std_ppm) when set,
/// otherwise the base scenario's fixed clocks are used. An obstacle puts the
/// configured bias/probability on the chosen propagation path (both
/// directions for the active link).
struct SweepConfig {
    ScenarioConfig base;
    std::vector<double> ratios = default_ratio_grid();
    TimeSpan total_delay = TimeSpan::millis(1.5); // delay_a + delay_b
    int n_trials = 2000;
    std::uint64_t seed = 0;
    Obstacle obstacle = Obstacle::none;
    bool include_cfo = false;
    std::optional<double> drift_std_ppm = 10.0;
    TimeSpan nlos_bias = TimeSpan::nanos(4);
    double nlos_prob = 0.5;
    int bootstrap_resamples = 1000;
    double ci_level = 0.99;
};

/// One (grid point, estimator) result: sample moments of the estimation error
/// against ground truth, the bootstrap CI of the std, and the model
/// prediction where one exists (double-sided estimators only).
struct SweepRow {
    double ratio = 0.0;
    TimeSpan delay_b;
    Est estimator = Est::ds_twr;
    int n_effective = 0;
    TimeSpan sample_mean;
    TimeSpan sample_std;
    TimeSpan ci_low;
    TimeSpan ci_high;
    bool has_prediction = false;
    TimeSpan predicted_bias;
    TimeSpan predicted_std;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Default response-delay grid for the CFO comparison, chosen so the
/// double-sided estimators' true std stays within one CI band across the
/// sweep while the single-sided variance grows several-fold.
std::vector<TimeSpan> default_cfo_delays();

/// Paired comparison of the double-sided, CFO-based and mixed estimators.
/// The total double-sided duration is held fixed while delay_b (and with it
/// the single-sided protocol duration) is swept; all estimators see identical
/// exchange records per trial.
struct CfoComparisonConfig {
    ScenarioConfig base;
    std::vector<TimeSpan> delays = default_cfo_delays();
    TimeSpan total_delay = TimeSpan::millis(7.5);
    int n_trials = 2000;
    std::uint64_t seed = 0;
    std::optional<double> drift_std_ppm = 10.0;
    int bootstrap_resamples = 1000;
    double ci_level = 0.99;
};

std::vector<SweepRow> run_cfo_comparison(const CfoComparisonConfig& cfg);

} // namespace twrsim
