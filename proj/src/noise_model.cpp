#include "twrsim/noise_model.hpp"

#include "twrsim/errors.hpp"

namespace twrsim {

NoiseMoments moments(const LinkNoiseModel& link) {
    const double p = link.nlos_prob;
    const double b = link.nlos_bias.sec();
    const double s = link.sigma.sec();
    NoiseMoments m;
    m.mean = link.mu + p * link.nlos_bias;
    m.variance = s * s + p * (1.0 - p) * b * b;
    return m;
}

void validate_noise(const LinkNoiseModel& link) {
    if (!link.mu.finite() || !link.sigma.finite() || !link.nlos_bias.finite())
        throw ConfigError("noise parameters must be finite");
    if (link.sigma.sec() < 0.0)
        throw ConfigError("noise sigma must be non-negative");
    if (link.nlos_bias.sec() < 0.0)
        throw ConfigError("nlos_bias must be non-negative");
    if (!(link.nlos_prob >= 0.0 && link.nlos_prob <= 1.0))
        throw ConfigError("nlos_prob must lie in [0, 1]");
}

TimeSpan draw_noise(const LinkNoiseModel& link, RandomStream& rng) {
    validate_noise(link);
    const double g = rng.normal(link.mu.sec(), link.sigma.sec());
    const bool biased = rng.bernoulli(link.nlos_prob);
    return TimeSpan::seconds(g) + (biased ? link.nlos_bias : TimeSpan{});
}

} // namespace twrsim
