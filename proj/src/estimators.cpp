#include "twrsim/estimators.hpp"

#include "twrsim/errors.hpp"

namespace twrsim {

namespace {

double active_ratio(const ExchangeRecord& rec) {
    const TimeSpan sum_a = rec.r_a_hat + rec.d_a_hat;
    const TimeSpan sum_b = rec.r_b_hat + rec.d_b_hat;
    if (sum_b.sec() <= 0.0)
        throw DegenerateRecordError("non-positive round/delay sum on responder side");
    return sum_a / sum_b; // k_a / k_b up to the shared-noise residual
}

double listener_ratio_to_a(const ExchangeRecord& rec) {
    const TimeSpan sum_l = rec.m_l_hat + rec.m_l_prime_hat;
    const TimeSpan sum_a = rec.r_a_hat + rec.d_a_hat;
    if (sum_a.sec() <= 0.0)
        throw DegenerateRecordError("non-positive round/delay sum on initiator side");
    return sum_l / sum_a; // k_l / k_a
}

double listener_ratio_to_b(const ExchangeRecord& rec) {
    const TimeSpan sum_l = rec.m_l_hat + rec.m_l_prime_hat;
    const TimeSpan sum_b = rec.r_b_hat + rec.d_b_hat;
    if (sum_b.sec() <= 0.0)
        throw DegenerateRecordError("non-positive round/delay sum on responder side");
    return sum_l / sum_b; // k_l / k_b
}

} // namespace

TimeSpan ds_twr(const ExchangeRecord& rec) {
    return 0.5 * rec.r_a_hat - 0.5 * active_ratio(rec) * rec.d_b_hat;
}

TimeSpan ds_tdoa(const ExchangeRecord& rec) {
    return 0.5 * listener_ratio_to_a(rec) * rec.r_a_hat +
           0.5 * listener_ratio_to_b(rec) * rec.d_b_hat - rec.m_l_hat;
}

TimeSpan ss_twr_cfo(const ExchangeRecord& rec) {
    if (rec.cfo_ab <= 0.0)
        throw DegenerateRecordError("non-positive CFO drift-ratio estimate");
    return 0.5 * rec.r_a_hat - 0.5 * rec.cfo_ab * rec.d_b_hat;
}

TimeSpan ss_tdoa_cfo(const ExchangeRecord& rec) {
    if (rec.cfo_la <= 0.0 || rec.cfo_lb <= 0.0)
        throw DegenerateRecordError("non-positive CFO drift-ratio estimate");
    return 0.5 * rec.cfo_la * rec.r_a_hat + 0.5 * rec.cfo_lb * rec.d_b_hat - rec.m_l_hat;
}

TimeSpan mixed_tdoa(const ExchangeRecord& rec) {
    if (rec.cfo_lb <= 0.0)
        throw DegenerateRecordError("non-positive CFO drift-ratio estimate");
    return 0.5 * listener_ratio_to_a(rec) * rec.r_a_hat +
           0.5 * rec.cfo_lb * rec.d_b_hat - rec.m_l_hat;
}

std::string_view name(Est est) {
    switch (est) {
    case Est::ds_twr: return "ds_twr";
    case Est::ds_tdoa: return "ds_tdoa";
    case Est::ss_twr_cfo: return "ss_twr_cfo";
    case Est::ss_tdoa_cfo: return "ss_tdoa_cfo";
    case Est::mixed_tdoa: return "mixed_tdoa";
    }
    return "?";
}

Est estimator_from_name(std::string_view n) {
    for (Est e : kAllEstimators)
        if (name(e) == n)
            return e;
    throw ConfigError("unknown estimator name: " + std::string(n));
}

bool estimates_tdoa(Est est) {
    return est == Est::ds_tdoa || est == Est::ss_tdoa_cfo || est == Est::mixed_tdoa;
}

TimeSpan evaluate(Est est, const ExchangeRecord& rec) {
    switch (est) {
    case Est::ds_twr: return ds_twr(rec);
    case Est::ds_tdoa: return ds_tdoa(rec);
    case Est::ss_twr_cfo: return ss_twr_cfo(rec);
    case Est::ss_tdoa_cfo: return ss_tdoa_cfo(rec);
    case Est::mixed_tdoa: return mixed_tdoa(rec);
    }
    throw ConfigError("unknown estimator");
}

} // namespace twrsim
