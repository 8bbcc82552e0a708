#include "skyjam/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skyjam {

double uav_gain(const Scenario& s, const Vec2& q, const Vec2& w) {
    return s.gamma0() / ((q - w).squaredNorm() + s.h2());
}

SlotGains slot_gains(const Scenario& s, const Vec2& q) {
    return {uav_gain(s, q, s.w_d()), uav_gain(s, q, s.w_e()), s.g_d_mean(), s.g_e_mean()};
}

double rate_lb_dest(const Scenario& s, const Vec2& q, double p_s, double p_u) {
    const double sinr =
        std::exp(-kEulerGamma) * s.g_d_mean() * p_s / (uav_gain(s, q, s.w_d()) * p_u + 1.0);
    return std::log1p(sinr) / std::numbers::ln2;
}

double rate_ub_eve(const Scenario& s, const Vec2& q, double p_s, double p_u) {
    const double sinr = s.g_e_mean() * p_s / (uav_gain(s, q, s.w_e()) * p_u + 1.0);
    return std::log1p(sinr) / std::numbers::ln2;
}

double expected_ln_exponential(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("exponential rate must be positive");
    return -std::log(lambda) - kEulerGamma;
}

}  // namespace skyjam
