#include "twrsim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "twrsim/errors.hpp"

namespace twrsim {

namespace {

void require_finite_nonneg(TimeSpan t, const char* what) {
    if (!t.finite() || t.sec() < 0.0)
        throw ConfigError(std::string(what) + " must be finite and non-negative");
}

} // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& c) {
    require_finite_nonneg(c.tof_ab, "tof_ab");
    require_finite_nonneg(c.tof_al, "tof_al");
    require_finite_nonneg(c.tof_bl, "tof_bl");
    if (!c.delay_a.finite() || c.delay_a.sec() <= 0.0)
        throw ConfigError("delay_a must be positive");
    if (!c.delay_b.finite() || c.delay_b.sec() <= 0.0)
        throw ConfigError("delay_b must be positive");
    validate_clock(c.clock_a, c.drift_cap_ppm);
    validate_clock(c.clock_b, c.drift_cap_ppm);
    validate_clock(c.clock_l, c.drift_cap_ppm);
    validate_noise(c.noise_ab);
    validate_noise(c.noise_ba);
    validate_noise(c.noise_al);
    validate_noise(c.noise_bl);
    if (!(c.cfo_noise_ppm >= 0.0) || !std::isfinite(c.cfo_noise_ppm))
        throw ConfigError("cfo_noise_ppm must be finite and non-negative");

    if (c.check_triangle) {
        // Flight times must be consistent with some planar placement.
        const double ab = c.tof_ab.sec(), al = c.tof_al.sec(), bl = c.tof_bl.sec();
        if (std::abs(al - bl) > ab + 1e-15 || ab > al + bl + 1e-15)
            throw ConfigError("flight times violate the triangle inequality");
    }

    std::vector<std::string> warnings;
    const double min_delay = std::min(c.delay_a.sec(), c.delay_b.sec());
    for (const auto* link : {&c.noise_ab, &c.noise_ba, &c.noise_al, &c.noise_bl}) {
        const NoiseMoments m = moments(*link);
        const double scale = std::max(std::abs(m.mean.sec()), m.stddev().sec());
        if (scale > 0.0 && min_delay < 100.0 * scale) {
            warnings.push_back("response delays are less than 100x the timestamping "
                               "noise level; the estimators assume noise is small "
                               "against the delays");
            break;
        }
    }
    return warnings;
}

} // namespace twrsim
