#include "twrsim/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "twrsim/errors.hpp"
#include "twrsim/prediction.hpp"

namespace twrsim {

std::string_view name(Obstacle o) {
    switch (o) {
    case Obstacle::none: return "none";
    case Obstacle::on_ab: return "on_ab";
    case Obstacle::on_al: return "on_al";
    case Obstacle::on_bl: return "on_bl";
    }
    return "?";
}

Obstacle obstacle_from_name(std::string_view n) {
    for (Obstacle o : {Obstacle::none, Obstacle::on_ab, Obstacle::on_al, Obstacle::on_bl})
        if (name(o) == n)
            return o;
    throw ConfigError("unknown obstacle name: " + std::string(n));
}

std::vector<double> default_ratio_grid() {
    std::vector<double> grid;
    grid.push_back(0.001);
    for (int i = 0; i < 21; ++i)
        grid.push_back(0.025 + 0.0475 * i);
    grid.push_back(0.999);
    return grid;
}

std::vector<TimeSpan> default_cfo_delays() {
    std::vector<TimeSpan> delays;
    for (double ms = 1.5; ms <= 6.01; ms += 0.75)
        delays.push_back(TimeSpan::millis(ms));
    return delays;
}

namespace {

constexpr std::uint64_t kBootstrapKey = 0x626f6f74; // distinct from trial keys

ScenarioConfig apply_obstacle(ScenarioConfig s, Obstacle o, TimeSpan bias, double prob) {
    const auto put = [&](LinkNoiseModel& link) {
        link.nlos_bias = bias;
        link.nlos_prob = prob;
    };
    switch (o) {
    case Obstacle::none: break;
    case Obstacle::on_ab:
        put(s.noise_ab);
        put(s.noise_ba);
        break;
    case Obstacle::on_al: put(s.noise_al); break;
    case Obstacle::on_bl: put(s.noise_bl); break;
    }
    return s;
}

double clamp_drift(double ppm, double cap) { return std::clamp(ppm, -cap, cap); }

/// Runs one grid point and summarizes every requested estimator.
///
/// Trial streams are keyed by (seed, trial index) only, so the same draws are
/// replayed at every grid point and in paired scenarios; differences between
/// points are then driven by the configuration, not by fresh sampling noise.
std::vector<SweepRow> measure_point(const ScenarioConfig& scenario,
                                    std::span<const Est> estimators, int n_trials,
                                    std::uint64_t seed, std::optional<double> drift_std_ppm,
                                    std::size_t point_index, int resamples, double ci_level) {
    const ExchangeTruth truth = derive_truth(scenario);

    std::vector<std::vector<TimeSpan>> errors(estimators.size());
    for (auto& v : errors)
        v.reserve(static_cast<std::size_t>(n_trials));

    for (int trial = 0; trial < n_trials; ++trial) {
        RandomStream rng(seed, static_cast<std::uint64_t>(trial));
        ScenarioConfig sc = scenario;
        if (drift_std_ppm) {
            sc.clock_a.drift_ppm = clamp_drift(rng.normal(0.0, *drift_std_ppm), sc.drift_cap_ppm);
            sc.clock_b.drift_ppm = clamp_drift(rng.normal(0.0, *drift_std_ppm), sc.drift_cap_ppm);
            sc.clock_l.drift_ppm = clamp_drift(rng.normal(0.0, *drift_std_ppm), sc.drift_cap_ppm);
        }
        const ExchangeRecord rec = simulate_exchange(truth, sc, rng);
        for (std::size_t e = 0; e < estimators.size(); ++e) {
            try {
                const TimeSpan value = evaluate(estimators[e], rec);
                const TimeSpan ref = estimates_tdoa(estimators[e]) ? truth.td : truth.tof_ab;
                errors[e].push_back(value - ref);
            } catch (const DegenerateRecordError&) {
                // excluded; visible through n_effective
            }
        }
    }

    const NoiseSummary summary = NoiseSummary::from_links(scenario.noise_ab, scenario.noise_ba,
                                                          scenario.noise_al, scenario.noise_bl);
    const DelayRatio ratio = DelayRatio::from_delays(scenario.delay_a, scenario.delay_b);

    std::vector<SweepRow> rows;
    rows.reserve(estimators.size());
    const RandomStream boot_base(seed, kBootstrapKey);
    for (std::size_t e = 0; e < estimators.size(); ++e) {
        SweepRow row;
        row.ratio = ratio.value();
        row.delay_b = scenario.delay_b;
        row.estimator = estimators[e];
        const SummaryStats stats =
            summarize(errors[e], boot_base.derive(point_index * 16 + e), resamples, ci_level);
        row.n_effective = stats.n;
        row.sample_mean = stats.mean;
        row.sample_std = stats.stddev;
        row.ci_low = stats.ci_low;
        row.ci_high = stats.ci_high;
        if (estimators[e] == Est::ds_twr) {
            row.has_prediction = true;
            row.predicted_bias = predict_twr_bias(summary);
            row.predicted_std = std_from_var(predict_twr_var(summary, ratio));
        } else if (estimators[e] == Est::ds_tdoa) {
            row.has_prediction = true;
            row.predicted_bias = predict_tdoa_bias(summary);
            row.predicted_std = std_from_var(predict_tdoa_var(summary, ratio));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    if (cfg.n_trials < 2)
        throw ConfigError("sweep requires at least two trials");
    if (cfg.ratios.empty() || !std::is_sorted(cfg.ratios.begin(), cfg.ratios.end()))
        throw ConfigError("sweep ratios must be a sorted, non-empty list");
    for (double r : cfg.ratios)
        if (!(r > 0.0 && r < 1.0))
            throw ConfigError("sweep ratios must lie strictly between 0 and 1");

    std::vector<Est> estimators = {Est::ds_twr, Est::ds_tdoa};
    if (cfg.include_cfo)
        estimators.insert(estimators.end(),
                          {Est::ss_twr_cfo, Est::ss_tdoa_cfo, Est::mixed_tdoa});

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < cfg.ratios.size(); ++i) {
        ScenarioConfig scenario =
            apply_obstacle(cfg.base, cfg.obstacle, cfg.nlos_bias, cfg.nlos_prob);
        scenario.delay_b = cfg.total_delay * cfg.ratios[i];
        scenario.delay_a = cfg.total_delay * (1.0 - cfg.ratios[i]);
        validate_scenario(scenario);
        auto point = measure_point(scenario, estimators, cfg.n_trials, cfg.seed,
                                   cfg.drift_std_ppm, i, cfg.bootstrap_resamples, cfg.ci_level);
        rows.insert(rows.end(), point.begin(), point.end());
    }
    return rows;
}

std::vector<SweepRow> run_cfo_comparison(const CfoComparisonConfig& cfg) {
    if (cfg.n_trials < 2)
        throw ConfigError("comparison requires at least two trials");
    if (cfg.delays.empty())
        throw ConfigError("comparison requires a non-empty delay list");

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < cfg.delays.size(); ++i) {
        const TimeSpan delay_b = cfg.delays[i];
        if (delay_b.sec() <= 0.0 || delay_b >= cfg.total_delay)
            throw ConfigError("each delay_b must lie inside (0, total_delay)");
        ScenarioConfig scenario = cfg.base;
        scenario.delay_b = delay_b;
        scenario.delay_a = cfg.total_delay - delay_b;
        validate_scenario(scenario);
        auto point = measure_point(scenario, kAllEstimators, cfg.n_trials, cfg.seed,
                                   cfg.drift_std_ppm, i, cfg.bootstrap_resamples, cfg.ci_level);
        rows.insert(rows.end(), point.begin(), point.end());
    }
    return rows;
}

} // namespace twrsim
