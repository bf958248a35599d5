#include "twrsim/time.hpp"

#include <cmath>
#include <limits>

#include "twrsim/errors.hpp"

namespace twrsim {

std::uint64_t timespan_to_ticks(TimeSpan t) {
    if (!t.finite() || t.sec() < 0.0)
        throw ConfigError("tick conversion requires a finite, non-negative duration");
    const double ticks = t.sec() * kTicksPerSecond;
    // Stay within the exactly-representable integer range of double.
    if (ticks >= 9.007199254740992e15)
        throw ConfigError("duration overflows the representable tick range");
    return static_cast<std::uint64_t>(std::llround(ticks));
}

} // namespace twrsim
