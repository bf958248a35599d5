#include "twrsim/exchange.hpp"

#include "twrsim/errors.hpp"

namespace twrsim {

ExchangeTruth derive_truth(const ScenarioConfig& c) {
    for (TimeSpan t : {c.tof_ab, c.tof_al, c.tof_bl, c.delay_a, c.delay_b})
        if (!t.finite())
            throw ConfigError("scenario times must be finite");

    ExchangeTruth truth;
    truth.tof_ab = c.tof_ab;
    truth.tof_al = c.tof_al;
    truth.tof_bl = c.tof_bl;
    truth.delay_a = c.delay_a;
    truth.delay_b = c.delay_b;
    truth.r_a = c.delay_b + 2.0 * c.tof_ab;
    truth.r_b = c.delay_a + 2.0 * c.tof_ab;
    truth.m_l = c.tof_ab - c.tof_al + c.delay_b + c.tof_bl;
    truth.m_l_prime = c.tof_ab - c.tof_bl + c.delay_a + c.tof_al;
    truth.td = c.tof_al - c.tof_bl;
    return truth;
}

ExchangeRecord make_record(const ExchangeTruth& truth, const ScenarioConfig& config,
                           const NoiseDraws& draws, const CfoNoise& cfo) {
    const double k_a = config.clock_a.factor();
    const double k_b = config.clock_b.factor();
    const double k_l = config.clock_l.factor();

    ExchangeRecord rec;
    rec.r_a_hat = k_a * (truth.r_a + draws.eps_resp);
    rec.d_a_hat = k_a * (truth.delay_a - draws.eps_resp);
    rec.d_b_hat = k_b * (truth.delay_b - draws.eps_poll);
    rec.r_b_hat = k_b * (truth.r_b + draws.eps_final);
    rec.m_l_hat = k_l * (truth.m_l - draws.eps_l1 + draws.eps_l2);
    rec.m_l_prime_hat = k_l * (truth.m_l_prime - draws.eps_l2 + draws.eps_l3);
    rec.cfo_ab = (k_a / k_b) * (1.0 + cfo.eta_ab);
    rec.cfo_lb = (k_l / k_b) * (1.0 + cfo.eta_lb);
    rec.cfo_la = (k_l / k_a) * (1.0 + cfo.eta_la);
    rec.debug_noise = draws;
    return rec;
}

ExchangeRecord simulate_exchange(const ExchangeTruth& truth, const ScenarioConfig& config,
                                 RandomStream& rng) {
    NoiseDraws draws;
    draws.eps_poll = draw_noise(config.noise_ab, rng);
    draws.eps_resp = draw_noise(config.noise_ba, rng);
    draws.eps_final = draw_noise(config.noise_ab, rng);
    draws.eps_l1 = draw_noise(config.noise_al, rng);
    draws.eps_l2 = draw_noise(config.noise_bl, rng);
    draws.eps_l3 = draw_noise(config.noise_al, rng);

    const double eta_std = config.cfo_noise_ppm * 1e-6;
    CfoNoise cfo;
    cfo.eta_ab = rng.normal(0.0, eta_std);
    cfo.eta_lb = rng.normal(0.0, eta_std);
    cfo.eta_la = rng.normal(0.0, eta_std);

    return make_record(truth, config, draws, cfo);
}

} // namespace twrsim
