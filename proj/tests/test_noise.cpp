#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "support/synthetic_log.hpp"
#include "twrsim/errors.hpp"
#include "twrsim/noise_estimation.hpp"
#include "twrsim/stats.hpp"
#include "twrsim/timestamp_log.hpp"

using namespace twrsim;
using namespace twrsim::testing;

TEST_CASE("unwrap_ticks removes counter wraps") {
    SUBCASE("monotone input is unchanged") {
        const std::vector<std::uint64_t> raw{100, 200, 300};
        CHECK(unwrap_ticks(raw) == raw);
    }
    SUBCASE("single wrap") {
        const std::vector<std::uint64_t> raw{kTickWrapPeriod - 10, 5};
        const auto out = unwrap_ticks(raw);
        CHECK(out[1] == kTickWrapPeriod + 5);
    }
    SUBCASE("ambiguous gaps raise") {
        const std::vector<std::uint64_t> half{0, kTickWrapPeriod / 2};
        CHECK_THROWS_AS(unwrap_ticks(half), InsufficientDataError);
        const std::vector<std::uint64_t> repeat{7, 7};
        CHECK_THROWS_AS(unwrap_ticks(repeat), InsufficientDataError);
    }
    SUBCASE("synthetic minute-long sequence reconstructs durations exactly") {
        // ~1.5 ms steps for 60 s wraps the 40-bit counter three times
        const double step_s = 1.5e-3;
        const auto step = static_cast<std::uint64_t>(std::llround(step_s * kTicksPerSecond));
        const int n = 40'000;
        std::vector<std::uint64_t> raw(n), truth(n);
        for (int i = 0; i < n; ++i) {
            truth[i] = static_cast<std::uint64_t>(i) * step;
            raw[i] = truth[i] & (kTickWrapPeriod - 1);
        }
        CHECK(truth.back() > 3 * kTickWrapPeriod);
        const auto out = unwrap_ticks(raw);
        bool all_match = true;
        for (int i = 0; i < n; ++i)
            all_match = all_match && out[i] == truth[i];
        CHECK(all_match);
    }
}

TEST_CASE("fit_clock") {
    std::vector<TimeSpan> tx;
    for (int i = 0; i < 40; ++i)
        tx.push_back(TimeSpan::millis(1.5 * i));

    SUBCASE("identity mapping") {
        const auto fit = fit_clock(tx, tx);
        CHECK(fit.drift == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(fit.offset.sec()) < 1e-15);
        CHECK(fit.residual_std.sec() < 1e-15);
    }
    SUBCASE("exact line recovers drift and offset") {
        std::vector<TimeSpan> rx;
        for (const TimeSpan t : tx)
            rx.push_back(1.00001 * t + TimeSpan::millis(5));
        const auto fit = fit_clock(tx, rx);
        CHECK(std::abs(fit.drift - 1.00001) < 1e-12);
        CHECK(fit.offset.ms() == doctest::Approx(5.0).epsilon(1e-9));
        CHECK(fit.residual_std.sec() < 1e-15);
    }
    SUBCASE("residual std gauges the reception noise") {
        RandomStream rng(91);
        std::vector<double> estimates;
        int within_quarter = 0;
        for (int window = 0; window < 60; ++window) {
            std::vector<TimeSpan> rx;
            for (const TimeSpan t : tx)
                rx.push_back(t + TimeSpan::seconds(rng.normal(0.0, 150e-12)));
            const auto fit = fit_clock(tx, rx);
            if (std::abs(fit.residual_std.ps() - 150.0) < 0.25 * 150.0)
                ++within_quarter;
            estimates.push_back(fit.residual_std.ps());
        }
        // a 40-point window estimates the std to ~11%, so 25% is ~2.2 sigma
        CHECK(within_quarter >= 54);
        CHECK(median(estimates) == doctest::Approx(150.0).epsilon(0.10));
    }
    SUBCASE("error paths") {
        std::vector<TimeSpan> two{TimeSpan::millis(0), TimeSpan::millis(1)};
        CHECK_THROWS_AS(fit_clock(two, two), InsufficientDataError);
        std::vector<TimeSpan> short_rx{TimeSpan::millis(0)};
        CHECK_THROWS_AS(fit_clock(tx, short_rx), ConfigError);
        std::vector<TimeSpan> flat(5, TimeSpan::millis(1));
        CHECK_THROWS_AS(fit_clock(flat, flat), ConfigError);
    }
    SUBCASE("shifting both series moves only the offset") {
        // Inputs quantized so that adding 2.0 s is exact in double precision;
        // any fit difference then comes from the algorithm, not the data.
        RandomStream rng(92);
        std::vector<TimeSpan> qtx, qrx;
        for (int i = 0; i < 40; ++i) {
            const double t = std::ldexp(static_cast<double>(96 * i), -20); // ~1.5 ms grid
            const double eps =
                std::ldexp(std::round(std::ldexp(rng.normal(0.0, 150e-12), 40)), -40);
            qtx.push_back(TimeSpan::seconds(t));
            qrx.push_back(TimeSpan::seconds(t + eps));
        }
        const auto fit = fit_clock(qtx, qrx);
        std::vector<TimeSpan> tx2, rx2;
        const TimeSpan shift = TimeSpan::seconds(2);
        for (std::size_t i = 0; i < qtx.size(); ++i) {
            tx2.push_back(qtx[i] + shift);
            rx2.push_back(qrx[i] + shift);
        }
        const auto fit2 = fit_clock(tx2, rx2);
        CHECK(std::abs(fit2.drift - fit.drift) < 1e-12);
        CHECK(std::abs((fit2.residual_std - fit.residual_std).sec()) <
              1e-12 * fit.residual_std.sec() + 1e-18);
        CHECK(std::abs((fit2.offset - fit.offset - shift * (1.0 - fit.drift)).sec()) < 1e-12);
    }
}

TEST_CASE("estimate_link_sigma recovers the injected noise") {
    SynthLinkParams p;
    p.n_messages = 4000; // ~6 s of log, ~100 windows

    SUBCASE("gaussian 150 ps") {
        p.noise.sigma = TimeSpan::picos(150);
        p.seed = 201;
        const auto sigma = estimate_link_sigma(make_synthetic_log(p));
        CHECK(sigma.ps() == doctest::Approx(150.0).epsilon(0.10));
    }
    SUBCASE("1 ns noise under 10 ppm drift") {
        p.noise.sigma = TimeSpan::nanos(1);
        p.rx_drift_ppm = 10.0;
        p.seed = 202;
        const auto sigma = estimate_link_sigma(make_synthetic_log(p));
        CHECK(sigma.ns() == doctest::Approx(1.0).epsilon(0.10));
    }
    SUBCASE("bimodal obstruction noise") {
        p.noise.sigma = TimeSpan::nanos(1);
        p.noise.nlos_bias = TimeSpan::nanos(4);
        p.noise.nlos_prob = 0.5;
        p.seed = 203;
        const auto sigma = estimate_link_sigma(make_synthetic_log(p));
        CHECK(sigma.ns() == doctest::Approx(std::sqrt(5.0)).epsilon(0.15));
    }
    SUBCASE("drift invariance up to the cap") {
        p.noise.sigma = TimeSpan::picos(500);
        p.rx_drift_ppm = 100.0;
        p.seed = 204;
        const auto sigma = estimate_link_sigma(make_synthetic_log(p));
        CHECK(sigma.ps() == doctest::Approx(500.0).epsilon(0.10));
    }
    SUBCASE("wrapping start offsets do not disturb the estimate") {
        p.noise.sigma = TimeSpan::picos(150);
        p.tx_start_ticks = kTickWrapPeriod - 1000;
        p.rx_start_ticks = kTickWrapPeriod - 50'000'000;
        p.seed = 205;
        const auto sigma = estimate_link_sigma(make_synthetic_log(p));
        CHECK(sigma.ps() == doctest::Approx(150.0).epsilon(0.10));
    }
    SUBCASE("insufficient data raises") {
        p.n_messages = 5;
        CHECK_THROWS_AS(estimate_link_sigma(make_synthetic_log(p)),
                        InsufficientDataError);
        TimestampLog empty;
        CHECK_THROWS_AS(estimate_link_sigma(empty), ConfigError);
    }
}

TEST_CASE("estimate_link_mu") {
    CHECK(estimate_link_mu(TimeSpan::nanos(10), TimeSpan::nanos(10)) == TimeSpan{});
    const TimeSpan mu = estimate_link_mu(TimeSpan::nanos(10) + distance_to_tof(0.31),
                                         TimeSpan::nanos(10));
    CHECK(mu.ns() == doctest::Approx(1.034).epsilon(1e-3));
}

TEST_CASE("timestamp log round-trips through its file format") {
    SynthLinkParams p;
    p.n_messages = 50;
    p.noise.sigma = TimeSpan::picos(150);
    const auto log = make_synthetic_log(p);

    const auto path = std::filesystem::temp_directory_path() / "twrsim_log_roundtrip.log";
    save_timestamp_log(log, path);
    const auto back = load_timestamp_log(path);
    REQUIRE(back.events.size() == log.events.size());
    bool equal = true;
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const auto& a = log.events[i];
        const auto& b = back.events[i];
        equal = equal && a.node == b.node && a.dir == b.dir && a.peer == b.peer &&
                a.msg_index == b.msg_index && a.raw_ticks == b.raw_ticks;
    }
    CHECK(equal);
    std::filesystem::remove(path);
}

TEST_CASE("timestamp log parser reports malformed lines") {
    const auto path = std::filesystem::temp_directory_path() / "twrsim_bad.log";
    const auto write = [&](const char* text) {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs(text, f);
        std::fclose(f);
    };
    write("node,dir,peer,msg,ticks\na,tx,b,0,100\na,zz,b,1,200\n");
    CHECK_THROWS_WITH_AS(load_timestamp_log(path), doctest::Contains("line 3"), ParseError);
    write("wrong,header\n");
    CHECK_THROWS_AS(load_timestamp_log(path), ParseError);
    write("node,dir,peer,msg,ticks\na,tx,b,0,1099511627776\n");
    CHECK_THROWS_AS(load_timestamp_log(path), ParseError); // 2^40 is out of range
    std::filesystem::remove(path);
}

TEST_CASE("extract_link and directed_links split multi-link logs") {
    SynthLinkParams p;
    p.n_messages = 300;
    p.noise.sigma = TimeSpan::picos(150);
    p.seed = 207;
    auto log = make_synthetic_log(p);
    SynthLinkParams q = p;
    q.tx_node = "n3";
    q.seed = 208;
    const auto other = make_synthetic_log(q);
    log.events.insert(log.events.end(), other.events.begin(), other.events.end());

    CHECK(directed_links(log).size() == 2);
    CHECK_THROWS_AS(estimate_link_sigma(log), ConfigError);
    const auto sigma = estimate_link_sigma(extract_link(log, "n1", "n2"));
    CHECK(sigma.ps() == doctest::Approx(150.0).epsilon(0.15));
}

TEST_CASE("r2_score") {
    const std::vector<double> obs{1.0, 2.0, 3.0, 4.0};
    SUBCASE("perfect prediction scores one") {
        CHECK(r2_score(obs, obs) == doctest::Approx(1.0));
    }
    SUBCASE("predicting the mean scores zero") {
        const std::vector<double> mean_pred(4, 2.5);
        CHECK(r2_score(mean_pred, obs) == doctest::Approx(0.0));
    }
    SUBCASE("worse than the mean goes negative") {
        const std::vector<double> bad{4.0, 3.0, 2.0, 1.0};
        CHECK(r2_score(bad, obs) < 0.0);
    }
    SUBCASE("affine transforms applied to both series leave the score unchanged") {
        const std::vector<double> pred{1.1, 1.9, 3.2, 3.8};
        std::vector<double> pred_m, obs_m;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            pred_m.push_back(pred[i] * 0.2997 + 7.0);
            obs_m.push_back(obs[i] * 0.2997 + 7.0);
        }
        CHECK(r2_score(pred_m, obs_m) == doctest::Approx(r2_score(pred, obs)).epsilon(1e-12));
    }
    SUBCASE("error paths") {
        const std::vector<double> flat(4, 1.0);
        CHECK_THROWS_AS(r2_score(obs, flat), InsufficientDataError);
        const std::vector<double> shorter{1.0, 2.0};
        CHECK_THROWS_AS(r2_score(shorter, obs), ConfigError);
        const std::vector<double> one{1.0};
        CHECK_THROWS_AS(r2_score(one, one), InsufficientDataError);
    }
}
