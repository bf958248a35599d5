#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "twrsim/time.hpp"

namespace twrsim {

enum class Direction { tx, rx };

/// One logged radio event: `node` transmitted to / received from `peer` the
/// message with the given index, at the raw 40-bit counter value.
struct LogEvent {
    std::string node;
    Direction dir = Direction::tx;
    std::string peer;
    std::int64_t msg_index = 0;
    std::uint64_t raw_ticks = 0;
};

/// Decoded event stream from a device log. Events are kept in file order;
/// per node the raw ticks may wrap but must step forward by less than half
/// the wrap period between consecutive events.
struct TimestampLog {
    std::vector<LogEvent> events;
};

/// Line format: header `node,dir,peer,msg,ticks`, then one event per line,
/// ticks as decimal integers below 2^40. Throws ParseError with the line
/// number on malformed input.
TimestampLog load_timestamp_log(const std::filesystem::path& path);
void save_timestamp_log(const TimestampLog& log, const std::filesystem::path& path);

/// Removes 40-bit counter wraps from one device's tick sequence, returning
/// absolute (unwrapped) ticks. Throws InsufficientDataError when a step is
/// ambiguous, i.e. at least half the wrap period, or not strictly forward.
std::vector<std::uint64_t> unwrap_ticks(std::span<const std::uint64_t> raw);

/// Unwrapped event times per node, in event order.
std::map<std::string, std::vector<TimeSpan>> unwrap_log(const TimestampLog& log);

} // namespace twrsim
