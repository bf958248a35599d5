#pragma once

#include "twrsim/random.hpp"
#include "twrsim/scenario.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Noise-free intervals of one double-sided exchange overheard by a listener.
///
/// A polls, B responds after delay_b, A finishes after delay_a. The listener
/// measures m_l from its poll reception to its response reception and
/// m_l_prime from the response to the final. By construction
/// m_l + m_l_prime == r_a + delay_a == r_b + delay_b.
struct ExchangeTruth {
    TimeSpan tof_ab, tof_al, tof_bl;
    TimeSpan delay_a, delay_b;
    TimeSpan r_a;        // A's round: poll tx to response rx
    TimeSpan r_b;        // B's round: response tx to final rx
    TimeSpan m_l;        // listener: poll rx to response rx
    TimeSpan m_l_prime;  // listener: response rx to final rx
    TimeSpan td;         // ground-truth TDoA, tof_al - tof_bl
};

ExchangeTruth derive_truth(const ScenarioConfig& config);

/// The six reception-error draws of one exchange, retained on the record for
/// white-box analysis of the estimators.
struct NoiseDraws {
    TimeSpan eps_poll;  // B receives poll
    TimeSpan eps_resp;  // A receives response
    TimeSpan eps_final; // B receives final
    TimeSpan eps_l1;    // L receives poll
    TimeSpan eps_l2;    // L receives response
    TimeSpan eps_l3;    // L receives final
};

/// Relative errors of the three CFO-based drift-ratio estimates.
struct CfoNoise {
    double eta_ab = 0.0;
    double eta_lb = 0.0;
    double eta_la = 0.0;
};

/// Clock-skewed, noisy durations as recorded by each device, plus the noisy
/// relative-drift estimates taken from carrier frequency offsets.
///
/// Shared-timestamp structure: r_a_hat and d_a_hat embed the same eps_resp
/// draw (A timestamps the response once), d_b_hat embeds eps_poll, r_b_hat
/// embeds eps_final, and m_l_hat / m_l_prime_hat share eps_l2.
struct ExchangeRecord {
    TimeSpan r_a_hat, d_a_hat;       // measured on A
    TimeSpan r_b_hat, d_b_hat;       // measured on B
    TimeSpan m_l_hat, m_l_prime_hat; // measured on L
    double cfo_ab = 1.0;             // estimate of k_a / k_b
    double cfo_lb = 1.0;             // estimate of k_l / k_b
    double cfo_la = 1.0;             // estimate of k_l / k_a
    NoiseDraws debug_noise;
};

/// Assembles the record from explicit draws (deterministic entry point).
ExchangeRecord make_record(const ExchangeTruth& truth, const ScenarioConfig& config,
                           const NoiseDraws& draws, const CfoNoise& cfo);

/// Draws the six reception errors (poll, resp, final, l1, l2, l3 in that
/// order) and the three CFO errors from `rng`, then assembles the record.
/// Draw order and count are fixed; same stream state gives the same record.
ExchangeRecord simulate_exchange(const ExchangeTruth& truth, const ScenarioConfig& config,
                                 RandomStream& rng);

} // namespace twrsim
