#pragma once

#include <random>

#include "skyjam/model.hpp"

namespace fixture {

/// The reference instance: S at the origin, D at (300, 0), E at (200, 200),
/// UAV from (-100, 100) to (500, 100) at 100 m altitude, 3 m/s.
inline skyjam::Scenario::Params reference_params(double period = 350.0, double dt = 1.0) {
    skyjam::Scenario::Params p;
    p.w_s = {0.0, 0.0};
    p.w_d = {300.0, 0.0};
    p.w_e = {200.0, 200.0};
    p.q0 = {-100.0, 100.0};
    p.qf = {500.0, 100.0};
    p.altitude_h = 100.0;
    p.v_max = 3.0;
    p.period_t = period;
    p.n_slots = static_cast<std::size_t>(std::llround(period / dt));
    p.gamma0 = skyjam::db_to_linear(90.0);
    p.pathloss_exp = 3.0;
    p.p_s_avg = skyjam::dbm_to_watts(30.0);
    p.p_s_peak = skyjam::dbm_to_watts(36.0);
    p.p_u_avg = skyjam::dbm_to_watts(10.0);
    p.p_u_peak = skyjam::dbm_to_watts(16.0);
    p.epsilon = 1e-4;
    return p;
}

inline skyjam::Scenario reference(double period = 350.0, double dt = 1.0) {
    return skyjam::Scenario::make(reference_params(period, dt));
}

/// A random feasible trajectory: a random walk with steps up to L that is
/// bent to end at qf. Built as the straight line plus a perturbation that
/// keeps every step within L.
inline skyjam::Trajectory random_trajectory(const skyjam::Scenario& s, std::mt19937_64& rng) {
    const std::size_t n = s.n_slots();
    skyjam::Trajectory line = skyjam::straight_line(s);
    const double slack = s.step_bound() - (s.qf() - s.q0()).norm() / static_cast<double>(n);
    if (n == 1 || slack <= 0.0) return line;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // Perturbation with increments below slack/2 per step, pinned to zero at
    // both ends by a linear correction.
    std::vector<skyjam::Vec2> off(n + 1, skyjam::Vec2::Zero());
    skyjam::Vec2 acc = skyjam::Vec2::Zero();
    const double amp = 0.25 * slack;
    for (std::size_t i = 1; i <= n; ++i) {
        acc += amp * skyjam::Vec2(u(rng), u(rng)).normalized() * std::abs(u(rng));
        off[i] = acc;
    }
    skyjam::Trajectory t;
    t.q.resize(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n);
        t.q[i - 1] = line.q[i - 1] + off[i] - frac * off[n];
    }
    t.q[n - 1] = s.qf();
    return t;
}

inline skyjam::PowerSchedule random_schedule(const skyjam::Scenario& s, std::mt19937_64& rng) {
    const std::size_t n = s.n_slots();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    skyjam::PowerSchedule p{std::vector<double>(n), std::vector<double>(n)};
    double ss = 0.0, su = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p.p_s[i] = s.p_s_peak() * u(rng);
        p.p_u[i] = s.p_u_peak() * u(rng);
        ss += p.p_s[i];
        su += p.p_u[i];
    }
    // Scale down to the average budgets when needed.
    const double ks = std::min(1.0, s.p_s_avg() * static_cast<double>(n) / ss);
    const double ku = std::min(1.0, s.p_u_avg() * static_cast<double>(n) / su);
    for (std::size_t i = 0; i < n; ++i) {
        p.p_s[i] *= ks;
        p.p_u[i] *= ku;
    }
    return p;
}

}  // namespace fixture
