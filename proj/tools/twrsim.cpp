// Command-line front end: simulate one exchange, run delay-ratio sweeps and
// CFO comparisons, evaluate the analytic predictors, estimate timestamping
// noise from device logs, and score predictions against observations.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twrsim/config_file.hpp"
#include "twrsim/errors.hpp"
#include "twrsim/estimators.hpp"
#include "twrsim/noise_estimation.hpp"
#include "twrsim/stats.hpp"
#include "twrsim/sweep.hpp"
#include "twrsim/table_io.hpp"

namespace fs = std::filesystem;
using namespace twrsim;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format = "csv";
    std::optional<int> trials;
    int repeat = 1;
    std::optional<double> ci_level;
    std::optional<int> bootstrap_n;
    std::string r2_on = "std";
};

struct LoadedConfig {
    ConfigFile cfg;
    std::string hash;
};

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {ConfigFile::parse_file(path), fnv1a_hex(buf.str())};
}

void warn_unused(const ConfigFile& cfg) {
    for (const auto& key : cfg.unused_keys())
        std::cerr << "warning: unused config key '" << key << "'\n";
}

fs::path resolve_out(const std::string& out) {
    fs::path p(out);
    if (p.is_absolute())
        return p;
    if (const char* dir = std::getenv("TWRSIM_OUT_DIR"))
        return fs::path(dir) / p;
    return p;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write output file: " + path.string());
    return out;
}

void write_rows(const CommonOpts& opts, const Provenance& prov,
                const std::vector<SweepRow>& rows) {
    const fs::path path = resolve_out(opts.out_path);
    auto out = open_out(path);
    if (opts.format == "json")
        write_rows_json(out, prov, rows);
    else
        write_rows_csv(out, prov, rows);
    std::cout << "wrote " << rows.size() << " rows to " << path.string() << "\n";
}

std::string fmt_time(TimeSpan t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%14.6f ns  (%10.6f m)", t.ns(), tof_to_distance(t));
    return buf;
}

void emit_report(const CommonOpts& opts, const std::string& text) {
    std::cout << text;
    if (!opts.out_path.empty()) {
        const fs::path path = resolve_out(opts.out_path);
        open_out(path) << text;
        std::cout << "wrote report to " << path.string() << "\n";
    }
}

int cmd_simulate(const CommonOpts& opts) {
    const auto loaded = load_config(opts.config_path);
    ScenarioConfig scenario = scenario_from_config(loaded.cfg);
    warn_unused(loaded.cfg);
    for (const auto& w : validate_scenario(scenario))
        std::cerr << "warning: " << w << "\n";

    const std::uint64_t seed = opts.seed.value_or(0);
    const auto truth = derive_truth(scenario);

    std::ostringstream report;
    report << "# " << kToolName << " " << kToolVersion << " command=simulate seed=" << seed
           << " config_hash=" << loaded.hash << "\n";
    report << "truth:\n";
    report << "  tof_ab    " << fmt_time(truth.tof_ab) << "\n";
    report << "  tof_al    " << fmt_time(truth.tof_al) << "\n";
    report << "  tof_bl    " << fmt_time(truth.tof_bl) << "\n";
    report << "  tdoa      " << fmt_time(truth.td) << "\n";
    report << "  r_a       " << fmt_time(truth.r_a) << "\n";
    report << "  r_b       " << fmt_time(truth.r_b) << "\n";
    report << "  m_l       " << fmt_time(truth.m_l) << "\n";
    report << "  m_l_prime " << fmt_time(truth.m_l_prime) << "\n";

    char line[160];
    if (opts.repeat <= 1) {
        RandomStream rng(seed, 0);
        const auto rec = simulate_exchange(truth, scenario, rng);
        report << "record:\n";
        report << "  r_a_hat        " << fmt_time(rec.r_a_hat) << "\n";
        report << "  d_a_hat        " << fmt_time(rec.d_a_hat) << "\n";
        report << "  r_b_hat        " << fmt_time(rec.r_b_hat) << "\n";
        report << "  d_b_hat        " << fmt_time(rec.d_b_hat) << "\n";
        report << "  m_l_hat        " << fmt_time(rec.m_l_hat) << "\n";
        report << "  m_l_prime_hat  " << fmt_time(rec.m_l_prime_hat) << "\n";
        std::snprintf(line, sizeof(line), "  cfo_ab %.12f  cfo_lb %.12f  cfo_la %.12f\n",
                      rec.cfo_ab, rec.cfo_lb, rec.cfo_la);
        report << line;
        report << "estimates (error vs truth):\n";
        for (Est est : kAllEstimators) {
            const TimeSpan value = evaluate(est, rec);
            const TimeSpan ref = estimates_tdoa(est) ? truth.td : truth.tof_ab;
            std::snprintf(line, sizeof(line),
                          "  %-12s %14.6f ns   error %+12.6f ns  (%+10.6f m)\n",
                          std::string(name(est)).c_str(), value.ns(), (value - ref).ns(),
                          tof_to_distance(value - ref));
            report << line;
        }
        emit_report(opts, report.str());
        return 0;
    }

    // repeated exchanges: per-estimator error statistics
    std::map<Est, std::vector<TimeSpan>> errors;
    for (int trial = 0; trial < opts.repeat; ++trial) {
        RandomStream rng(seed, static_cast<std::uint64_t>(trial));
        const auto rec = simulate_exchange(truth, scenario, rng);
        for (Est est : kAllEstimators) {
            const TimeSpan ref = estimates_tdoa(est) ? truth.td : truth.tof_ab;
            try {
                errors[est].push_back(evaluate(est, rec) - ref);
            } catch (const DegenerateRecordError&) {
            }
        }
    }
    report << "error statistics over " << opts.repeat << " exchanges:\n";
    std::snprintf(line, sizeof(line), "  %-12s %6s %14s %14s %14s\n", "estimator", "n",
                  "mean [ns]", "std [ns]", "std [m]");
    report << line;
    const RandomStream boot(seed, 0x626f6f74);
    std::size_t slot = 0;
    for (Est est : kAllEstimators) {
        const auto s = summarize(errors[est], boot.derive(slot++),
                                 opts.bootstrap_n.value_or(1000),
                                 opts.ci_level.value_or(0.99));
        std::snprintf(line, sizeof(line), "  %-12s %6d %14.6f %14.6f %14.6f\n",
                      std::string(name(est)).c_str(), s.n, s.mean.ns(), s.stddev.ns(),
                      tof_to_distance(s.stddev));
        report << line;
    }
    emit_report(opts, report.str());
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    const auto loaded = load_config(opts.config_path);
    SweepConfig cfg = sweep_from_config(loaded.cfg);
    warn_unused(loaded.cfg);
    if (opts.seed)
        cfg.seed = *opts.seed;
    if (opts.trials)
        cfg.n_trials = *opts.trials;
    if (opts.ci_level)
        cfg.ci_level = *opts.ci_level;
    if (opts.bootstrap_n)
        cfg.bootstrap_resamples = *opts.bootstrap_n;
    for (const auto& w : validate_scenario(cfg.base))
        std::cerr << "warning: " << w << "\n";

    const auto rows = run_sweep(cfg);
    write_rows(opts, Provenance{"sweep", cfg.seed, loaded.hash}, rows);
    return 0;
}

int cmd_compare_cfo(const CommonOpts& opts) {
    const auto loaded = load_config(opts.config_path);
    CfoComparisonConfig cfg = cfo_comparison_from_config(loaded.cfg);
    warn_unused(loaded.cfg);
    if (opts.seed)
        cfg.seed = *opts.seed;
    if (opts.trials)
        cfg.n_trials = *opts.trials;
    if (opts.ci_level)
        cfg.ci_level = *opts.ci_level;
    if (opts.bootstrap_n)
        cfg.bootstrap_resamples = *opts.bootstrap_n;

    const auto rows = run_cfo_comparison(cfg);
    write_rows(opts, Provenance{"compare-cfo", cfg.seed, loaded.hash}, rows);
    return 0;
}

int cmd_predict(const CommonOpts& opts) {
    const auto loaded = load_config(opts.config_path);
    const ScenarioConfig scenario = scenario_from_config(loaded.cfg);
    std::vector<double> ratios = loaded.cfg.has("sweep.ratios")
                                     ? loaded.cfg.get_real_list("sweep.ratios")
                                     : default_ratio_grid();
    warn_unused(loaded.cfg);

    const NoiseSummary n = NoiseSummary::from_links(scenario.noise_ab, scenario.noise_ba,
                                                    scenario.noise_al, scenario.noise_bl);
    const auto rows = build_predict_table(n, ratios);
    const Provenance prov{"predict", opts.seed.value_or(0), loaded.hash};
    if (opts.out_path.empty()) {
        if (opts.format == "json")
            write_predict_json(std::cout, prov, rows);
        else
            write_predict_csv(std::cout, prov, rows);
        return 0;
    }
    const fs::path path = resolve_out(opts.out_path);
    auto out = open_out(path);
    if (opts.format == "json")
        write_predict_json(out, prov, rows);
    else
        write_predict_csv(out, prov, rows);
    std::cout << "wrote " << rows.size() << " rows to " << path.string() << "\n";
    return 0;
}

int cmd_estimate_noise(const CommonOpts& opts) {
    const auto loaded = load_config(opts.config_path);
    const std::string log_value = loaded.cfg.get_string("log");
    const TimeSpan window = loaded.cfg.get_time("window", kDefaultFitWindow);
    const std::string tx = loaded.cfg.get_string("link.tx", "");
    const std::string rx = loaded.cfg.get_string("link.rx", "");
    const bool have_mu =
        loaded.cfg.has("mu.twr_mean") && loaded.cfg.has("mu.ground_truth_tof");
    const TimeSpan twr_mean = loaded.cfg.get_time("mu.twr_mean", TimeSpan{});
    const TimeSpan truth_tof = loaded.cfg.get_time("mu.ground_truth_tof", TimeSpan{});
    warn_unused(loaded.cfg);

    fs::path log_path(log_value);
    if (log_path.is_relative())
        log_path = loaded.cfg.dir() / log_path;
    const TimestampLog log = load_timestamp_log(log_path);

    std::vector<std::pair<std::string, std::string>> links;
    if (!tx.empty() && !rx.empty())
        links.emplace_back(tx, rx);
    else
        links = directed_links(log);
    if (links.empty())
        throw InsufficientDataError("log contains no directed links");

    std::ostringstream table;
    table << "# " << kToolName << " " << kToolVersion
          << " command=estimate-noise seed=" << opts.seed.value_or(0)
          << " config_hash=" << loaded.hash << "\n";
    table << "tx,rx,sigma_ns,sigma_m\n";
    for (const auto& [from, to] : links) {
        const TimeSpan sigma = estimate_link_sigma(extract_link(log, from, to), window);
        char line[160];
        std::snprintf(line, sizeof(line), "%s,%s,%.6f,%.6f\n", from.c_str(), to.c_str(),
                      sigma.ns(), tof_to_distance(sigma));
        table << line;
    }
    if (have_mu) {
        const TimeSpan mu = estimate_link_mu(twr_mean, truth_tof);
        char line[160];
        std::snprintf(line, sizeof(line), "# link mu estimate: %.6f ns (%.6f m)\n", mu.ns(),
                      tof_to_distance(mu));
        table << line;
    }

    std::cout << table.str();
    if (!opts.out_path.empty()) {
        const fs::path path = resolve_out(opts.out_path);
        open_out(path) << table.str();
        std::cout << "wrote noise estimates to " << path.string() << "\n";
    }
    return 0;
}

int cmd_score(const CommonOpts& opts, const std::string& in_path,
              const std::string& predicted_path) {
    const auto observed = read_sweep_csv(resolve_out(in_path));

    // Predictions come either from the same table or from a second one,
    // joined on (estimator, ratio).
    std::map<std::pair<std::string, long long>, double> predicted_by_key;
    const auto key_of = [](const ScoredPoint& p) {
        return std::pair{p.estimator, static_cast<long long>(std::llround(p.ratio * 1e9))};
    };
    if (!predicted_path.empty()) {
        for (const auto& p : read_sweep_csv(resolve_out(predicted_path)))
            if (p.has_prediction)
                predicted_by_key[key_of(p)] = p.predicted_std_ns;
    }

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const auto& p : observed) {
        double prediction = 0.0;
        if (!predicted_path.empty()) {
            const auto it = predicted_by_key.find(key_of(p));
            if (it == predicted_by_key.end()) {
                if (!p.has_prediction)
                    continue; // estimator without a model row in either table
                throw ParseError("no predicted row joins (estimator=" + p.estimator +
                                 ", ratio=" + std::to_string(p.ratio) + ")");
            }
            prediction = it->second;
        } else {
            if (!p.has_prediction)
                continue;
            prediction = p.predicted_std_ns;
        }
        auto& [preds, obs] = series[p.estimator];
        const double power = opts.r2_on == "var" ? 2.0 : 1.0;
        preds.push_back(std::pow(prediction, power));
        obs.push_back(std::pow(p.sample_std_ns, power));
    }
    if (series.empty())
        throw InsufficientDataError("no scorable rows (predicted columns empty)");

    std::ostringstream table;
    table << "estimator,r2_" << opts.r2_on << "\n";
    for (const auto& [est, pair] : series) {
        const double r2 = r2_score(pair.first, pair.second);
        char line[128];
        std::snprintf(line, sizeof(line), "%s,%.6f\n", est.c_str(), r2);
        table << line;
    }
    std::cout << table.str();
    if (!opts.out_path.empty()) {
        const fs::path path = resolve_out(opts.out_path);
        open_out(path) << table.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-sided ranging simulator, estimators and analysis"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string score_in, score_predicted;

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* c = cmd->add_option("--config", opts.config_path, "key-value config file");
        if (needs_config)
            c->required();
        cmd->add_option("--seed", opts.seed, "master seed (overrides the config)");
        cmd->add_option("--out", opts.out_path, "output file path");
        cmd->add_option("--ci-level", opts.ci_level, "bootstrap CI level, e.g. 0.99");
        cmd->add_option("--bootstrap-n", opts.bootstrap_n, "bootstrap resample count");
        return cmd;
    };
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* sim = add_common(app.add_subcommand("simulate", "run exchanges and print estimates"),
                           true);
    sim->add_option("--repeat", opts.repeat, "number of exchanges to simulate");

    auto* sweep = add_common(
        app.add_subcommand("sweep", "Monte-Carlo sweep over delay ratios"), true);
    sweep->add_option("--trials", opts.trials, "trials per grid point");
    add_format(sweep);

    auto* cfo = add_common(
        app.add_subcommand("compare-cfo", "double-sided vs CFO-based estimators"), true);
    cfo->add_option("--trials", opts.trials, "trials per delay");
    add_format(cfo);

    add_format(add_common(
        app.add_subcommand("predict", "evaluate the bias/variance predictors"), true));

    add_common(app.add_subcommand("estimate-noise", "per-link noise from a timestamp log"),
               true);

    auto* score = add_common(
        app.add_subcommand("score", "R2 of predicted vs observed std curves"), false);
    score->add_option("--in", score_in, "observed table (sweep CSV)")->required();
    score->add_option("--predicted", score_predicted,
                      "optional second table joined on estimator and ratio");
    score->add_option("--r2-on", opts.r2_on, "score the std or var series")
        ->check(CLI::IsMember({"std", "var"}));

    CLI11_PARSE(app, argc, argv);

    // default output names keep sweep/compare runs from clobbering each other
    if (opts.out_path.empty()) {
        if (sweep->parsed())
            opts.out_path = "twrsim_sweep." + opts.format;
        else if (cfo->parsed())
            opts.out_path = "twrsim_cfo." + opts.format;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(opts);
        if (sweep->parsed())
            return cmd_sweep(opts);
        if (cfo->parsed())
            return cmd_compare_cfo(opts);
        if (app.get_subcommand("predict")->parsed())
            return cmd_predict(opts);
        if (app.get_subcommand("estimate-noise")->parsed())
            return cmd_estimate_noise(opts);
        if (score->parsed())
            return cmd_score(opts, score_in, score_predicted);
    } catch (const ParseError& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return 2;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error (data): " << e.what() << "\n";
        return 3;
    } catch (const DegenerateRecordError& e) {
        std::cerr << "error (degenerate): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
