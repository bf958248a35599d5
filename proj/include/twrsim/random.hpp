#pragma once

#include <cstdint>
#include <random>

namespace twrsim {

/// Deterministic, splittable random stream.
///
/// A stream is identified by a (seed, key) pair; the same pair always yields
/// the same sequence, so per-trial streams can be consumed in any order or in
/// parallel without changing results. derive() creates an independent sibling
/// stream without touching this stream's state.
///
/// Draw costs are fixed: normal() always advances the engine by exactly two
/// steps, uniform() and bernoulli() by one. This keeps draw positions aligned
/// between runs that differ only in distribution parameters, so paired
/// scenarios (e.g. with and without an obstacle) see the same underlying
/// randomness.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t key = 0);

    RandomStream derive(std::uint64_t key) const;

    std::uint64_t next_u64();
    double uniform();                              // [0, 1)
    double normal(double mean, double stddev);     // Box-Muller, no cached spare
    bool bernoulli(double p);

private:
    std::uint64_t base_;
    std::mt19937_64 engine_;
};

} // namespace twrsim
