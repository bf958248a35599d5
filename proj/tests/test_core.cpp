#include <doctest.h>

#include <cmath>
#include <vector>

#include "twrsim/clock.hpp"
#include "twrsim/errors.hpp"
#include "twrsim/noise_model.hpp"
#include "twrsim/random.hpp"
#include "twrsim/time.hpp"

using namespace twrsim;

TEST_CASE("TimeSpan round-trips through integer picoseconds below one second") {
    RandomStream rng(101);
    for (int i = 0; i < 1000; ++i) {
        const double mag = std::pow(10.0, -11.0 + 11.0 * rng.uniform()); // 1e-11 .. 1 s
        const TimeSpan t = TimeSpan::seconds(rng.bernoulli(0.5) ? mag : -mag);
        const TimeSpan back = TimeSpan::picos(std::round(t.ps()));
        CHECK((back - t).abs() <= TimeSpan::picos(0.5));
    }
}

TEST_CASE("skew scales durations by the drift factor") {
    CHECK(skew(ClockModel{0.0}, TimeSpan::millis(1)) == TimeSpan::millis(1));
    // k = 1 + 1e-5, so 1 ms is measured 10 ns long
    CHECK(skew(ClockModel{10.0}, TimeSpan::millis(1)).sec() ==
          doctest::Approx(1.00001e-3).epsilon(1e-12));
    // direct multiplication oracle
    const double expected = 750e-6 * (1.0 - 20e-6);
    CHECK(skew(ClockModel{-20.0}, TimeSpan::micros(750)).sec() ==
          doctest::Approx(expected).epsilon(1e-15));
    CHECK(skew(ClockModel{-20.0}, TimeSpan::micros(750)).us() ==
          doctest::Approx(749.985).epsilon(1e-12)); // 15 ns shorter
}

TEST_CASE("skew is linear and inverts exactly") {
    RandomStream rng(102);
    for (int i = 0; i < 200; ++i) {
        const ClockModel clock{-100.0 + 200.0 * rng.uniform()};
        const TimeSpan x = TimeSpan::seconds(rng.uniform() * 0.1);
        const TimeSpan y = TimeSpan::seconds(rng.uniform() * 0.1);
        const TimeSpan lhs = skew(clock, x + y);
        const TimeSpan rhs = skew(clock, x) + skew(clock, y);
        CHECK((lhs - rhs).abs().sec() <= 4e-16 * (x + y).sec());
        const double inverted = skew(clock, x).sec() / clock.factor();
        CHECK(std::abs(inverted - x.sec()) <= 4e-16 * std::abs(x.sec()));
    }
}

TEST_CASE("clock validation enforces the drift cap") {
    CHECK_NOTHROW(validate_clock(ClockModel{20.0}));
    CHECK_THROWS_AS(validate_clock(ClockModel{150.0}), ConfigError);
    CHECK_THROWS_AS(validate_clock(ClockModel{30.0}, 20.0), ConfigError);
    CHECK_THROWS_AS(validate_clock(ClockModel{std::nan("")}), ConfigError);
}

TEST_CASE("tof_to_distance uses the speed of light") {
    CHECK(tof_to_distance(TimeSpan{}) == 0.0);
    CHECK(tof_to_distance(TimeSpan::nanos(1)) == doctest::Approx(0.299792458).epsilon(1e-12));
    // 10 m corresponds to 10/c seconds of flight (~33.36 ns)
    const TimeSpan tof_10m = distance_to_tof(10.0);
    CHECK(tof_10m.ns() == doctest::Approx(33.3564).epsilon(1e-4));
    CHECK(std::abs(tof_to_distance(tof_10m) - 10.0) < 1e-3);
}

TEST_CASE("tick conversions") {
    CHECK(ticks_to_timespan(0) == TimeSpan{});
    CHECK(ticks_to_timespan(63'897'600'000ull).sec() == 1.0);
    CHECK(std::abs(ticks_to_timespan(1).ps() - 15.65) < 0.01);

    SUBCASE("round-trip stays within half a tick up to the 40-bit span") {
        RandomStream rng(103);
        for (int i = 0; i < 1000; ++i) {
            const TimeSpan t = TimeSpan::seconds(rng.uniform() * 17.0);
            const TimeSpan back = ticks_to_timespan(timespan_to_ticks(t));
            CHECK((back - t).abs().sec() <= 0.5 / kTicksPerSecond);
        }
    }
    SUBCASE("rejects negative and overflowing durations") {
        CHECK_THROWS_AS(timespan_to_ticks(TimeSpan::seconds(-1.0)), ConfigError);
        CHECK_THROWS_AS(timespan_to_ticks(TimeSpan::seconds(1e9)), ConfigError);
    }
}

TEST_CASE("random streams are deterministic and splittable") {
    RandomStream a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && va == b.next_u64();
        any_diff = any_diff || va != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);

    // derive() does not depend on how much of the parent was consumed
    RandomStream p1(42, 7), p2(42, 7);
    p2.uniform();
    p2.uniform();
    CHECK(p1.derive(3).next_u64() == p2.derive(3).next_u64());
}

TEST_CASE("normal draws consume a fixed number of engine steps") {
    RandomStream a(5), b(5);
    (void)a.normal(0.0, 1.0);
    (void)b.next_u64();
    (void)b.next_u64();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("draw_noise degenerate distribution returns exactly zero") {
    RandomStream rng(1);
    const LinkNoiseModel link{TimeSpan{}, TimeSpan{}, TimeSpan{}, 0.0};
    for (int i = 0; i < 10; ++i)
        CHECK(draw_noise(link, rng) == TimeSpan{});
}

TEST_CASE("draw_noise rejects invalid parameters") {
    RandomStream rng(1);
    LinkNoiseModel link;
    link.sigma = TimeSpan::nanos(-1);
    CHECK_THROWS_AS(draw_noise(link, rng), ConfigError);
    link.sigma = TimeSpan{};
    link.nlos_prob = 1.5;
    CHECK_THROWS_AS(draw_noise(link, rng), ConfigError);
}

namespace {

struct SampleMoments {
    double mean, var, m4; // m4: fourth central moment
};

SampleMoments sample_noise(const LinkNoiseModel& link, int n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> xs(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& x : xs) {
        x = draw_noise(link, rng).sec();
        sum += x;
    }
    const double mean = sum / n;
    double sum2 = 0.0, sum4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        sum2 += d * d;
        sum4 += d * d * d * d;
    }
    return {mean, sum2 / (n - 1), sum4 / n};
}

} // namespace

TEST_CASE("draw_noise matches the Gaussian law of large numbers") {
    LinkNoiseModel link;
    link.sigma = TimeSpan::nanos(1);
    const auto m = sample_noise(link, 1'000'000, 11);
    CHECK(std::abs(m.mean) < 4e-12);                          // 4 ps
    CHECK(std::abs(std::sqrt(m.var) - 1e-9) < 0.01e-9);       // 1 %
}

TEST_CASE("draw_noise matches the bimodal mixture moments") {
    LinkNoiseModel link;
    link.sigma = TimeSpan::nanos(1);
    link.nlos_bias = TimeSpan::nanos(4);
    link.nlos_prob = 0.5;
    const auto m = sample_noise(link, 1'000'000, 12);
    CHECK(m.mean == doctest::Approx(2e-9).epsilon(0.02));
    CHECK(m.var == doctest::Approx(5e-18).epsilon(0.02)); // 1 ns^2 + 4 ns^2
}

TEST_CASE("moments accessor agrees with sampled moments within five standard errors") {
    RandomStream param_rng(13);
    const int n = 1'000'000;
    for (int trial = 0; trial < 5; ++trial) {
        LinkNoiseModel link;
        link.mu = TimeSpan::nanos(2.0 * param_rng.uniform() - 1.0);
        link.sigma = TimeSpan::nanos(0.1 + 2.0 * param_rng.uniform());
        link.nlos_bias = TimeSpan::nanos(5.0 * param_rng.uniform());
        link.nlos_prob = param_rng.uniform();
        const NoiseMoments expect = moments(link);
        const auto got = sample_noise(link, n, 1000 + trial);

        const double se_mean = expect.stddev().sec() / std::sqrt(double(n));
        CHECK(std::abs(got.mean - expect.mean.sec()) < 5.0 * se_mean);
        // SE of the sample variance from the sample's own fourth moment,
        // valid for any mixture shape
        const double se_var = std::sqrt((got.m4 - got.var * got.var) / double(n));
        CHECK(std::abs(got.var - expect.variance) < 5.0 * se_var);
    }
}
