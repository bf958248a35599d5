#include "twrsim/noise_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "twrsim/errors.hpp"
#include "twrsim/stats.hpp"

namespace twrsim {

ClockFit fit_clock(std::span<const TimeSpan> tx_times, std::span<const TimeSpan> rx_times) {
    const std::size_t n = tx_times.size();
    if (n != rx_times.size())
        throw ConfigError("tx and rx series must have equal length");
    if (n < 3)
        throw InsufficientDataError("clock fit requires at least three points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(tx_times[i] > tx_times[i - 1]))
            throw ConfigError("tx times must be strictly increasing");

    // Centered OLS of rx on tx; centering keeps the sums well conditioned when
    // absolute times are large against the residuals.
    double tx_mean = 0.0, rx_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tx_mean += tx_times[i].sec();
        rx_mean += rx_times[i].sec();
    }
    tx_mean /= static_cast<double>(n);
    rx_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = tx_times[i].sec() - tx_mean;
        const double dy = rx_times[i].sec() - rx_mean;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if (sxx <= 0.0)
        throw InsufficientDataError("degenerate clock fit: tx times carry no spread");

    ClockFit fit;
    fit.n_points = static_cast<int>(n);
    fit.drift = sxy / sxx;
    fit.offset = TimeSpan::seconds(rx_mean - fit.drift * tx_mean);

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            (rx_times[i].sec() - rx_mean) - fit.drift * (tx_times[i].sec() - tx_mean);
        ss_res += r * r;
    }
    fit.residual_std = TimeSpan::seconds(std::sqrt(ss_res / static_cast<double>(n - 2)));
    return fit;
}

std::vector<std::pair<std::string, std::string>> directed_links(const TimestampLog& log) {
    std::set<std::pair<std::string, std::string>> links;
    for (const LogEvent& ev : log.events) {
        if (ev.dir == Direction::tx)
            links.emplace(ev.node, ev.peer);
        else
            links.emplace(ev.peer, ev.node);
    }
    return {links.begin(), links.end()};
}

TimestampLog extract_link(const TimestampLog& log, const std::string& tx_node,
                          const std::string& rx_node) {
    TimestampLog out;
    for (const LogEvent& ev : log.events) {
        const bool is_tx = ev.dir == Direction::tx && ev.node == tx_node && ev.peer == rx_node;
        const bool is_rx = ev.dir == Direction::rx && ev.node == rx_node && ev.peer == tx_node;
        if (is_tx || is_rx)
            out.events.push_back(ev);
    }
    return out;
}

TimeSpan estimate_link_sigma(const TimestampLog& log, TimeSpan window) {
    if (window.sec() <= 0.0)
        throw ConfigError("window must be positive");
    const auto links = directed_links(log);
    if (links.size() != 1)
        throw ConfigError("log must contain exactly one directed link (found " +
                          std::to_string(links.size()) + "); use extract_link first");

    // Pair transmissions and receptions by message index, in unwrapped time.
    const auto times = unwrap_log(log);
    std::map<std::int64_t, TimeSpan> tx_by_msg, rx_by_msg;
    std::map<std::string, std::size_t> cursor;
    for (const LogEvent& ev : log.events) {
        const TimeSpan t = times.at(ev.node)[cursor[ev.node]++];
        auto& side = ev.dir == Direction::tx ? tx_by_msg : rx_by_msg;
        if (!side.emplace(ev.msg_index, t).second)
            throw ConfigError("duplicate message index " + std::to_string(ev.msg_index));
    }

    std::vector<TimeSpan> tx_times, rx_times;
    for (const auto& [msg, t_tx] : tx_by_msg) {
        const auto it = rx_by_msg.find(msg);
        if (it == rx_by_msg.end())
            continue;
        tx_times.push_back(t_tx);
        rx_times.push_back(it->second);
    }
    if (rx_times.empty())
        throw InsufficientDataError("no matched tx/rx pairs in the log");

    // Group receptions into distinct windows and fit each one separately.
    const TimeSpan start = rx_times.front();
    std::map<std::int64_t, std::vector<std::size_t>> windows;
    for (std::size_t i = 0; i < rx_times.size(); ++i)
        windows[static_cast<std::int64_t>(std::floor((rx_times[i] - start) / window))]
            .push_back(i);

    std::vector<double> residual_stds;
    for (const auto& [idx, members] : windows) {
        if (members.size() < static_cast<std::size_t>(kMinWindowPoints))
            continue;
        std::vector<TimeSpan> wtx, wrx;
        wtx.reserve(members.size());
        wrx.reserve(members.size());
        for (std::size_t i : members) {
            wtx.push_back(tx_times[i]);
            wrx.push_back(rx_times[i]);
        }
        residual_stds.push_back(fit_clock(wtx, wrx).residual_std.sec());
    }
    if (residual_stds.empty())
        throw InsufficientDataError("no window holds enough receptions for a fit");
    return TimeSpan::seconds(median(std::move(residual_stds)));
}

double r2_score(std::span<const double> predicted, std::span<const double> observed) {
    if (predicted.size() != observed.size())
        throw ConfigError("predicted and observed series must have equal length");
    if (observed.size() < 2)
        throw InsufficientDataError("scoring requires at least two points");

    const double mean = sample_mean(observed);
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    }
    if (ss_tot == 0.0)
        throw InsufficientDataError("undefined score: observed series is constant");
    return 1.0 - ss_res / ss_tot;
}

} // namespace twrsim
