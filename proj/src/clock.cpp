#include "twrsim/clock.hpp"

#include <cmath>
#include <string>

#include "twrsim/errors.hpp"

namespace twrsim {

void validate_clock(ClockModel clock, double cap_ppm) {
    if (!std::isfinite(clock.drift_ppm))
        throw ConfigError("clock drift must be finite");
    if (std::abs(clock.drift_ppm) > cap_ppm)
        throw ConfigError("clock drift " + std::to_string(clock.drift_ppm) +
                          " ppm exceeds the cap of " + std::to_string(cap_ppm) + " ppm");
}

} // namespace twrsim
