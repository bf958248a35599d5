#include "twrsim/timestamp_log.hpp"

#include <charconv>
#include <fstream>

#include "twrsim/errors.hpp"

namespace twrsim {

namespace {

constexpr std::string_view kHeader = "node,dir,peer,msg,ticks";

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, int line_no, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(field) + "'");
    return value;
}

} // namespace

TimestampLog load_timestamp_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open timestamp log: " + path.string());

    TimestampLog log;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line_no == 1) {
            if (line != kHeader)
                throw ParseError("line 1: expected header '" + std::string(kHeader) + "'");
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 5)
            throw ParseError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
        LogEvent ev;
        ev.node = std::string(fields[0]);
        if (fields[1] == "tx")
            ev.dir = Direction::tx;
        else if (fields[1] == "rx")
            ev.dir = Direction::rx;
        else
            throw ParseError("line " + std::to_string(line_no) + ": bad dir '" +
                             std::string(fields[1]) + "' (want tx or rx)");
        ev.peer = std::string(fields[2]);
        ev.msg_index = parse_number<std::int64_t>(fields[3], line_no, "msg index");
        ev.raw_ticks = parse_number<std::uint64_t>(fields[4], line_no, "tick count");
        if (ev.raw_ticks >= kTickWrapPeriod)
            throw ParseError("line " + std::to_string(line_no) +
                             ": tick count exceeds the 40-bit counter range");
        log.events.push_back(std::move(ev));
    }
    return log;
}

void save_timestamp_log(const TimestampLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write timestamp log: " + path.string());
    out << kHeader << '\n';
    for (const LogEvent& ev : log.events)
        out << ev.node << ',' << (ev.dir == Direction::tx ? "tx" : "rx") << ',' << ev.peer
            << ',' << ev.msg_index << ',' << ev.raw_ticks << '\n';
}

std::vector<std::uint64_t> unwrap_ticks(std::span<const std::uint64_t> raw) {
    std::vector<std::uint64_t> out;
    out.reserve(raw.size());
    std::uint64_t wraps = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] >= kTickWrapPeriod)
            throw ConfigError("raw tick value exceeds the 40-bit counter range");
        if (i > 0) {
            const std::uint64_t step = (raw[i] - raw[i - 1]) & (kTickWrapPeriod - 1);
            if (step == 0 || step >= kTickWrapPeriod / 2)
                throw InsufficientDataError(
                    "ambiguous tick step (gap of at least half the wrap period)");
            if (raw[i] < raw[i - 1])
                ++wraps;
        }
        out.push_back(raw[i] + wraps * kTickWrapPeriod);
    }
    return out;
}

std::map<std::string, std::vector<TimeSpan>> unwrap_log(const TimestampLog& log) {
    std::map<std::string, std::vector<std::uint64_t>> raw;
    for (const LogEvent& ev : log.events)
        raw[ev.node].push_back(ev.raw_ticks);

    std::map<std::string, std::vector<TimeSpan>> out;
    for (const auto& [node, ticks] : raw) {
        const auto absolute = unwrap_ticks(ticks);
        auto& series = out[node];
        series.reserve(absolute.size());
        for (std::uint64_t t : absolute)
            series.push_back(ticks_to_timespan(t));
    }
    return out;
}

} // namespace twrsim
