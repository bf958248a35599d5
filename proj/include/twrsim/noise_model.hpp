#pragma once

#include "twrsim/random.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Additive timestamping-error model for one directed link: a Gaussian core
/// plus a constant bias applied with probability nlos_prob (obstructed or
/// multipath propagation makes the error distribution bimodal).
struct LinkNoiseModel {
    TimeSpan mu;        // mean of the Gaussian core
    TimeSpan sigma;     // std of the Gaussian core, >= 0
    TimeSpan nlos_bias; // extra delay when the bias fires, >= 0
    double nlos_prob = 0.0;
};

/// Effective first two moments of the mixed distribution.
struct NoiseMoments {
    TimeSpan mean;
    double variance; // seconds^2

    TimeSpan stddev() const { return TimeSpan::seconds(std::sqrt(variance)); }
};

NoiseMoments moments(const LinkNoiseModel& link);

/// Throws ConfigError when sigma/bias are negative or nlos_prob is outside
/// [0, 1].
void validate_noise(const LinkNoiseModel& link);

/// One error draw: Gaussian core plus Bernoulli-gated bias. Consumes exactly
/// one normal() and one bernoulli() from the stream regardless of parameters.
TimeSpan draw_noise(const LinkNoiseModel& link, RandomStream& rng);

} // namespace twrsim
