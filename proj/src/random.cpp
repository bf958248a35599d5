#include "twrsim/random.hpp"

#include <cmath>
#include <numbers>

namespace twrsim {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(splitmix64(seed) ^ splitmix64(key ^ 0xd1b54a32d192ed03ull));
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t key)
    : base_(mix(seed, key)), engine_(base_) {}

RandomStream RandomStream::derive(std::uint64_t key) const {
    return RandomStream(base_, key + 1);
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal(double mean, double stddev) {
    // Two fixed engine steps; u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double mag = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * mag * std::cos(2.0 * std::numbers::pi * u2);
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

} // namespace twrsim
