#include "twrsim/prediction.hpp"

#include <cmath>

#include "twrsim/errors.hpp"

namespace twrsim {

NoiseSummary NoiseSummary::from_links(const LinkNoiseModel& ab, const LinkNoiseModel& ba,
                                      const LinkNoiseModel& al, const LinkNoiseModel& bl) {
    NoiseSummary n;
    n.mu_ab = moments(ab).mean;
    n.mu_ba = moments(ba).mean;
    n.mu_al = moments(al).mean;
    n.mu_bl = moments(bl).mean;
    n.sigma_ab = moments(ab).stddev();
    n.sigma_ba = moments(ba).stddev();
    n.sigma_al = moments(al).stddev();
    n.sigma_bl = moments(bl).stddev();
    return n;
}

DelayRatio::DelayRatio(double r) : r_(r) {
    if (!(r > 0.0 && r < 1.0))
        throw ConfigError("delay ratio must lie strictly between 0 and 1");
}

DelayRatio DelayRatio::from_delays(TimeSpan delay_a, TimeSpan delay_b) {
    return DelayRatio(delay_b / (delay_a + delay_b));
}

TimeSpan predict_twr_bias(const NoiseSummary& n) {
    return 0.5 * (n.mu_ba + n.mu_ab);
}

double predict_twr_var(const NoiseSummary& n, DelayRatio ratio) {
    const double r = ratio.value();
    const double s_ba = n.sigma_ba.sec();
    const double s_ab = n.sigma_ab.sec();
    return 0.25 * s_ba * s_ba + 0.25 * r * r * s_ab * s_ab +
           0.25 * (1.0 - r) * (1.0 - r) * s_ab * s_ab;
}

TimeSpan predict_tdoa_bias(const NoiseSummary& n) {
    return 0.5 * n.mu_ba - 0.5 * n.mu_ab + n.mu_al - n.mu_bl;
}

double predict_tdoa_var(const NoiseSummary& n, DelayRatio ratio) {
    const double r = ratio.value();
    const double s_al = n.sigma_al.sec();
    const double s_bl = n.sigma_bl.sec();
    return predict_twr_var(n, ratio) + s_bl * s_bl +
           (1.0 - r) * (1.0 - r) * s_al * s_al + r * r * s_al * s_al;
}

DelayRatio optimal_ratio() { return DelayRatio(0.5); }

} // namespace twrsim
