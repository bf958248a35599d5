#pragma once

#include <string>
#include <vector>

#include "twrsim/clock.hpp"
#include "twrsim/noise_model.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Error std of the CFO-based relative-drift estimate, in ppm of the ratio.
/// This is a modeling knob, not a measured hardware constant; see README.
inline constexpr double kDefaultCfoNoisePpm = 0.3;

/// All inputs of one simulated exchange: geometry (as flight times), response
/// delays, device clocks and per-directed-link timestamping noise.
///
/// Directed links are named by transmitter then receiver: noise_ab is the
/// error on B's receptions of A's packets, noise_al the error on the
/// listener's receptions of A's packets, and so on.
struct ScenarioConfig {
    TimeSpan tof_ab;
    TimeSpan tof_al;
    TimeSpan tof_bl;
    TimeSpan delay_a;
    TimeSpan delay_b;
    ClockModel clock_a;
    ClockModel clock_b;
    ClockModel clock_l;
    LinkNoiseModel noise_ab;
    LinkNoiseModel noise_ba;
    LinkNoiseModel noise_al;
    LinkNoiseModel noise_bl;
    double cfo_noise_ppm = kDefaultCfoNoisePpm;

    // Only enforced when the flight times are meant to come from a geometric
    // placement; off by default since they may be set directly.
    bool check_triangle = false;
    double drift_cap_ppm = kDriftCapPpm;
};

/// Throws ConfigError on hard violations. Returns warnings for suspicious but
/// legal setups (e.g. response delays not comfortably above the noise level).
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

} // namespace twrsim
