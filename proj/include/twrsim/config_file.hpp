#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twrsim/scenario.hpp"
#include "twrsim/sweep.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Parses a duration with a unit suffix: "1 ns", "750us", "0.75 ms", "1.5e-3 s".
/// Accepted units: ps, ns, us, ms, s.
TimeSpan parse_time(std::string_view text);

/// Line-oriented `key = value` configuration with dotted keys and `#`
/// comments. Lookups track which keys were consumed so typos can be reported.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::filesystem::path& path);
    static ConfigFile parse_string(std::string_view text, std::string origin = "<string>");

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    TimeSpan get_time(const std::string& key) const;
    TimeSpan get_time(const std::string& key, TimeSpan fallback) const;
    std::vector<double> get_real_list(const std::string& key) const;
    std::vector<TimeSpan> get_time_list(const std::string& key) const;

    /// Keys never consumed by any getter; non-empty usually means a typo.
    std::vector<std::string> unused_keys() const;

    /// Directory of the config file, for resolving relative paths in values.
    const std::filesystem::path& dir() const { return dir_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };

    [[noreturn]] void fail(const std::string& key, const std::string& why) const;
    const Entry& entry(const std::string& key) const;

    std::string origin_;
    std::filesystem::path dir_;
    std::map<std::string, Entry> entries_;
};

/// Builds a scenario from the `tof_*`, `delay_*`, `clock_*.drift_ppm`,
/// `noise_*.{mu,sigma,nlos_bias,nlos_prob}` and `cfo_noise_ppm` keys.
ScenarioConfig scenario_from_config(const ConfigFile& cfg);

/// Inverse of scenario_from_config: the scenario as config-file text.
std::string scenario_to_config_string(const ScenarioConfig& scenario);

/// Adds the `sweep.*` keys on top of the scenario keys.
SweepConfig sweep_from_config(const ConfigFile& cfg);

/// Adds the `cfo.*` keys on top of the scenario keys.
CfoComparisonConfig cfo_comparison_from_config(const ConfigFile& cfg);

} // namespace twrsim
