#pragma once

// Synthetic timestamp-log generator: one directed link with a known relative
// drift, offset and reception-noise distribution, quantized to device ticks
// on a wrapping 40-bit counter. Serves as the independent oracle for the
// noise-estimation pipeline.

#include <cmath>
#include <cstdint>
#include <string>

#include "twrsim/noise_model.hpp"
#include "twrsim/random.hpp"
#include "twrsim/timestamp_log.hpp"

namespace twrsim::testing {

struct SynthLinkParams {
    std::string tx_node = "n1";
    std::string rx_node = "n2";
    int n_messages = 2000;
    TimeSpan interval = TimeSpan::millis(1.5); // transmit spacing
    TimeSpan tof = TimeSpan::nanos(20);
    double rx_drift_ppm = 0.0;  // receiver clock rate relative to transmitter
    TimeSpan rx_offset = TimeSpan::millis(3);
    LinkNoiseModel noise;       // reception timestamping noise
    std::uint64_t tx_start_ticks = 0;
    std::uint64_t rx_start_ticks = 0;
    std::uint64_t seed = 1;
};

inline std::uint64_t wrapped_ticks(double seconds, std::uint64_t start_ticks) {
    const double ticks = seconds * kTicksPerSecond;
    const auto rounded = static_cast<std::uint64_t>(std::llround(ticks));
    return (start_ticks + rounded) & (kTickWrapPeriod - 1);
}

inline TimestampLog make_synthetic_log(const SynthLinkParams& p) {
    RandomStream rng(p.seed);
    const double k_rx = 1.0 + p.rx_drift_ppm * 1e-6;

    TimestampLog log;
    log.events.reserve(static_cast<std::size_t>(p.n_messages) * 2);
    for (int i = 0; i < p.n_messages; ++i) {
        const double t_tx = i * p.interval.sec();
        LogEvent tx;
        tx.node = p.tx_node;
        tx.dir = Direction::tx;
        tx.peer = p.rx_node;
        tx.msg_index = i;
        tx.raw_ticks = wrapped_ticks(t_tx, p.tx_start_ticks);
        log.events.push_back(tx);

        const double eps = draw_noise(p.noise, rng).sec();
        const double rx_clock = k_rx * (t_tx + p.tof.sec()) + p.rx_offset.sec() + eps;
        LogEvent rx;
        rx.node = p.rx_node;
        rx.dir = Direction::rx;
        rx.peer = p.tx_node;
        rx.msg_index = i;
        rx.raw_ticks = wrapped_ticks(rx_clock, p.rx_start_ticks);
        log.events.push_back(rx);
    }
    return log;
}

} // namespace twrsim::testing
