#include "twrsim/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "twrsim/errors.hpp"

namespace twrsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view text) {
    const std::string buf(trim(text));
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(buf, &pos);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + buf + "'");
    }
    if (pos != buf.size())
        throw ParseError("trailing characters after number: '" + buf + "'");
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos)
            comma = text.size();
        const auto item = trim(text.substr(start, comma - start));
        if (!item.empty())
            items.push_back(item);
        start = comma + 1;
    }
    return items;
}

} // namespace

TimeSpan parse_time(std::string_view text) {
    const std::string_view trimmed = trim(text);
    std::size_t unit_start = trimmed.size();
    while (unit_start > 0 &&
           std::isalpha(static_cast<unsigned char>(trimmed[unit_start - 1])))
        --unit_start;
    const std::string_view unit = trimmed.substr(unit_start);
    const std::string_view number = trim(trimmed.substr(0, unit_start));
    const double value = parse_real(number);
    if (unit == "s")
        return TimeSpan::seconds(value);
    if (unit == "ms")
        return TimeSpan::millis(value);
    if (unit == "us")
        return TimeSpan::micros(value);
    if (unit == "ns")
        return TimeSpan::nanos(value);
    if (unit == "ps")
        return TimeSpan::picos(value);
    throw ParseError("missing or unknown time unit in '" + std::string(trimmed) +
                     "' (use ps, ns, us, ms or s)");
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    ConfigFile cfg = parse_string(buf.str(), path.string());
    cfg.dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return cfg;
}

ConfigFile ConfigFile::parse_string(std::string_view text, std::string origin) {
    ConfigFile cfg;
    cfg.origin_ = std::move(origin);
    cfg.dir_ = ".";

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t eol = text.find('\n', start);
        if (eol == std::string_view::npos)
            eol = text.size();
        ++line_no;
        std::string_view line = text.substr(start, eol - start);
        start = eol + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(cfg.origin_ + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ParseError(cfg.origin_ + ":" + std::to_string(line_no) + ": empty key");
        if (!cfg.entries_.emplace(key, Entry{value, line_no, false}).second)
            throw ParseError(cfg.origin_ + ":" + std::to_string(line_no) +
                             ": duplicate key '" + key + "'");
    }
    return cfg;
}

void ConfigFile::fail(const std::string& key, const std::string& why) const {
    const auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? origin_ : origin_ + ":" + std::to_string(it->second.line);
    throw ParseError(where + ": key '" + key + "': " + why);
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        fail(key, "missing");
    it->second.used = true;
    return it->second;
}

bool ConfigFile::has(const std::string& key) const { return entries_.contains(key); }

std::string ConfigFile::get_string(const std::string& key) const { return entry(key).value; }

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double ConfigFile::get_real(const std::string& key) const {
    try {
        return parse_real(entry(key).value);
    } catch (const ParseError& e) {
        fail(key, e.what());
    }
}

double ConfigFile::get_real(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key))
        return fallback;
    const std::string& v = entry(key).value;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        fail(key, "not an integer: '" + v + "'");
    return value;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    if (!has(key))
        return fallback;
    const std::string& v = entry(key).value;
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    fail(key, "not a boolean: '" + v + "'");
}

TimeSpan ConfigFile::get_time(const std::string& key) const {
    try {
        return parse_time(entry(key).value);
    } catch (const ParseError& e) {
        fail(key, e.what());
    }
}

TimeSpan ConfigFile::get_time(const std::string& key, TimeSpan fallback) const {
    return has(key) ? get_time(key) : fallback;
}

std::vector<double> ConfigFile::get_real_list(const std::string& key) const {
    std::vector<double> out;
    try {
        for (const auto item : split_list(entry(key).value))
            out.push_back(parse_real(item));
    } catch (const ParseError& e) {
        fail(key, e.what());
    }
    return out;
}

std::vector<TimeSpan> ConfigFile::get_time_list(const std::string& key) const {
    std::vector<TimeSpan> out;
    try {
        for (const auto item : split_list(entry(key).value))
            out.push_back(parse_time(item));
    } catch (const ParseError& e) {
        fail(key, e.what());
    }
    return out;
}

std::vector<std::string> ConfigFile::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_)
        if (!entry.used)
            out.push_back(key);
    return out;
}

namespace {

LinkNoiseModel link_from_config(const ConfigFile& cfg, const std::string& prefix) {
    LinkNoiseModel link;
    link.mu = cfg.get_time(prefix + ".mu", TimeSpan{});
    link.sigma = cfg.get_time(prefix + ".sigma", TimeSpan{});
    link.nlos_bias = cfg.get_time(prefix + ".nlos_bias", TimeSpan{});
    link.nlos_prob = cfg.get_real(prefix + ".nlos_prob", 0.0);
    return link;
}

} // namespace

ScenarioConfig scenario_from_config(const ConfigFile& cfg) {
    ScenarioConfig s;
    s.tof_ab = cfg.get_time("tof_ab", TimeSpan{});
    s.tof_al = cfg.get_time("tof_al", TimeSpan{});
    s.tof_bl = cfg.get_time("tof_bl", TimeSpan{});
    s.delay_a = cfg.get_time("delay_a", TimeSpan::micros(750));
    s.delay_b = cfg.get_time("delay_b", TimeSpan::micros(750));
    s.clock_a.drift_ppm = cfg.get_real("clock_a.drift_ppm", 0.0);
    s.clock_b.drift_ppm = cfg.get_real("clock_b.drift_ppm", 0.0);
    s.clock_l.drift_ppm = cfg.get_real("clock_l.drift_ppm", 0.0);
    s.noise_ab = link_from_config(cfg, "noise_ab");
    s.noise_ba = link_from_config(cfg, "noise_ba");
    s.noise_al = link_from_config(cfg, "noise_al");
    s.noise_bl = link_from_config(cfg, "noise_bl");
    s.cfo_noise_ppm = cfg.get_real("cfo_noise_ppm", kDefaultCfoNoisePpm);
    s.check_triangle = cfg.get_bool("check_triangle", false);
    s.drift_cap_ppm = cfg.get_real("drift_cap_ppm", kDriftCapPpm);
    return s;
}

std::string scenario_to_config_string(const ScenarioConfig& s) {
    std::ostringstream out;
    out.precision(17);
    const auto put_time = [&out](const char* key, TimeSpan t) {
        out << key << " = " << t.ns() << " ns\n";
    };
    put_time("tof_ab", s.tof_ab);
    put_time("tof_al", s.tof_al);
    put_time("tof_bl", s.tof_bl);
    put_time("delay_a", s.delay_a);
    put_time("delay_b", s.delay_b);
    out << "clock_a.drift_ppm = " << s.clock_a.drift_ppm << "\n";
    out << "clock_b.drift_ppm = " << s.clock_b.drift_ppm << "\n";
    out << "clock_l.drift_ppm = " << s.clock_l.drift_ppm << "\n";
    const auto put_link = [&](const char* prefix, const LinkNoiseModel& link) {
        out << prefix << ".mu = " << link.mu.ns() << " ns\n";
        out << prefix << ".sigma = " << link.sigma.ns() << " ns\n";
        out << prefix << ".nlos_bias = " << link.nlos_bias.ns() << " ns\n";
        out << prefix << ".nlos_prob = " << link.nlos_prob << "\n";
    };
    put_link("noise_ab", s.noise_ab);
    put_link("noise_ba", s.noise_ba);
    put_link("noise_al", s.noise_al);
    put_link("noise_bl", s.noise_bl);
    out << "cfo_noise_ppm = " << s.cfo_noise_ppm << "\n";
    out << "check_triangle = " << (s.check_triangle ? "true" : "false") << "\n";
    out << "drift_cap_ppm = " << s.drift_cap_ppm << "\n";
    return out.str();
}

SweepConfig sweep_from_config(const ConfigFile& cfg) {
    SweepConfig sw;
    sw.base = scenario_from_config(cfg);
    if (cfg.has("sweep.ratios"))
        sw.ratios = cfg.get_real_list("sweep.ratios");
    sw.total_delay = cfg.get_time("sweep.total_delay", sw.total_delay);
    sw.n_trials = static_cast<int>(cfg.get_int("sweep.trials", sw.n_trials));
    sw.seed = static_cast<std::uint64_t>(cfg.get_int("sweep.seed", 0));
    sw.obstacle = obstacle_from_name(cfg.get_string("sweep.obstacle", "none"));
    sw.include_cfo = cfg.get_bool("sweep.include_cfo", false);
    if (cfg.has("sweep.drift_std_ppm")) {
        const double std_ppm = cfg.get_real("sweep.drift_std_ppm");
        sw.drift_std_ppm = std_ppm < 0.0 ? std::nullopt : std::make_optional(std_ppm);
    }
    sw.nlos_bias = cfg.get_time("sweep.nlos_bias", sw.nlos_bias);
    sw.nlos_prob = cfg.get_real("sweep.nlos_prob", sw.nlos_prob);
    sw.bootstrap_resamples = static_cast<int>(cfg.get_int("sweep.bootstrap_n", 1000));
    sw.ci_level = cfg.get_real("sweep.ci_level", 0.99);
    return sw;
}

CfoComparisonConfig cfo_comparison_from_config(const ConfigFile& cfg) {
    CfoComparisonConfig cc;
    cc.base = scenario_from_config(cfg);
    if (cfg.has("cfo.delays"))
        cc.delays = cfg.get_time_list("cfo.delays");
    cc.total_delay = cfg.get_time("cfo.total_delay", cc.total_delay);
    cc.n_trials = static_cast<int>(cfg.get_int("cfo.trials", cc.n_trials));
    cc.seed = static_cast<std::uint64_t>(cfg.get_int("cfo.seed", 0));
    if (cfg.has("cfo.drift_std_ppm")) {
        const double std_ppm = cfg.get_real("cfo.drift_std_ppm");
        cc.drift_std_ppm = std_ppm < 0.0 ? std::nullopt : std::make_optional(std_ppm);
    }
    cc.bootstrap_resamples = static_cast<int>(cfg.get_int("cfo.bootstrap_n", 1000));
    cc.ci_level = cfg.get_real("cfo.ci_level", 0.99);
    return cc;
}

} // namespace twrsim
