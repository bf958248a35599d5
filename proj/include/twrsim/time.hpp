#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace twrsim {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

/// Device timestamp counter rate: 128 * 499.2 MHz. One tick is ~15.65 ps and
/// the 40-bit counter wraps roughly every 17.2 s.
inline constexpr double kTicksPerSecond = 63'897'600'000.0;
inline constexpr std::uint64_t kTickWrapPeriod = std::uint64_t{1} << 40;

/// A signed duration in seconds.
///
/// Values span ~1e-11 s flight times up to ~1e-1 s protocol durations. A
/// double keeps sub-femtosecond resolution at the 0.1 s scale, far below the
/// 15.65 ps tick, so one representation covers the whole range.
class TimeSpan {
public:
    constexpr TimeSpan() = default;

    static constexpr TimeSpan seconds(double s) { return TimeSpan(s); }
    static constexpr TimeSpan millis(double ms) { return TimeSpan(ms * 1e-3); }
    static constexpr TimeSpan micros(double us) { return TimeSpan(us * 1e-6); }
    static constexpr TimeSpan nanos(double ns) { return TimeSpan(ns * 1e-9); }
    static constexpr TimeSpan picos(double ps) { return TimeSpan(ps * 1e-12); }

    constexpr double sec() const { return sec_; }
    constexpr double ms() const { return sec_ * 1e3; }
    constexpr double us() const { return sec_ * 1e6; }
    constexpr double ns() const { return sec_ * 1e9; }
    constexpr double ps() const { return sec_ * 1e12; }

    bool finite() const { return std::isfinite(sec_); }
    constexpr TimeSpan abs() const { return TimeSpan(sec_ < 0 ? -sec_ : sec_); }

    constexpr TimeSpan operator-() const { return TimeSpan(-sec_); }
    constexpr TimeSpan operator+(TimeSpan o) const { return TimeSpan(sec_ + o.sec_); }
    constexpr TimeSpan operator-(TimeSpan o) const { return TimeSpan(sec_ - o.sec_); }
    constexpr TimeSpan operator*(double f) const { return TimeSpan(sec_ * f); }
    constexpr TimeSpan operator/(double f) const { return TimeSpan(sec_ / f); }
    constexpr double operator/(TimeSpan o) const { return sec_ / o.sec_; }
    constexpr TimeSpan& operator+=(TimeSpan o) { sec_ += o.sec_; return *this; }
    constexpr TimeSpan& operator-=(TimeSpan o) { sec_ -= o.sec_; return *this; }

    constexpr auto operator<=>(const TimeSpan&) const = default;

private:
    explicit constexpr TimeSpan(double s) : sec_(s) {}
    double sec_ = 0.0;
};

constexpr TimeSpan operator*(double f, TimeSpan t) { return t * f; }

/// Distance covered at the speed of light, in meters.
constexpr double tof_to_distance(TimeSpan t) { return t.sec() * kSpeedOfLight; }
constexpr TimeSpan distance_to_tof(double meters) {
    return TimeSpan::seconds(meters / kSpeedOfLight);
}

/// Converts a raw device tick count into seconds.
constexpr TimeSpan ticks_to_timespan(std::uint64_t ticks) {
    return TimeSpan::seconds(static_cast<double>(ticks) / kTicksPerSecond);
}

/// Rounds a duration to the nearest device tick. Throws ConfigError for
/// negative durations or values beyond the representable tick range.
std::uint64_t timespan_to_ticks(TimeSpan t);

} // namespace twrsim
