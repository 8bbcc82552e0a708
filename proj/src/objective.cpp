#include "skyjam/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "skyjam/channel.hpp"
#include "skyjam/parallel.hpp"

namespace skyjam {

SlotRates slot_rates(const Scenario& s, const Trajectory& t, const PowerSchedule& p) {
    const std::size_t n = s.n_slots();
    SlotRates r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = {rate_lb_dest(s, t[i], p.p_s[i], p.p_u[i]),
                rate_ub_eve(s, t[i], p.p_s[i], p.p_u[i])};
    }
    return r;
}

double surrogate_value(const Scenario& s, const Trajectory& t, const PowerSchedule& p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.n_slots(); ++i) {
        sum += rate_lb_dest(s, t[i], p.p_s[i], p.p_u[i]) - rate_ub_eve(s, t[i], p.p_s[i], p.p_u[i]);
    }
    return sum / static_cast<double>(s.n_slots());
}

namespace {

void require_feasible(const Scenario& s, const Trajectory& t, const PowerSchedule& p) {
    const Verdict vt = check_trajectory(s, t);
    const Verdict vp = check_schedule(s, p);
    if (vt.feasible() && vp.feasible()) return;
    std::ostringstream os;
    os << "infeasible input:";
    for (const auto* v : {&vt, &vp}) {
        for (const auto& x : v->violations) {
            os << ' ' << to_string(x.kind) << "[" << x.index << "]=" << x.magnitude;
        }
    }
    throw std::invalid_argument(os.str());
}

// Unit-mean exponential by inversion; 1 - u lies in (0, 1].
double draw_exp1(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -std::log1p(-u);
}

struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

struct SlotEstimate {
    Welford d, e, clamped;
};

}  // namespace

double surrogate_objective(const Scenario& s, const Trajectory& t, const PowerSchedule& p) {
    require_feasible(s, t, p);
    return surrogate_value(s, t, p);
}

SecrecyReport mc_secrecy_rate(const Scenario& s, const Trajectory& t, const PowerSchedule& p,
                              std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("samples must be >= 1");
    const std::size_t n = s.n_slots();
    if (t.size() != n || p.p_s.size() != n || p.p_u.size() != n) {
        throw std::invalid_argument("trajectory/schedule length does not match scenario");
    }

    std::vector<SlotEstimate> est(n);
    parallel_for(n, [&](std::size_t i) {
        const SlotGains g = slot_gains(s, t[i]);
        const double snr_d = g.g_d_mean * p.p_s[i] / (g.h_d_norm * p.p_u[i] + 1.0);
        const double snr_e = g.g_e_mean * p.p_s[i] / (g.h_e_norm * p.p_u[i] + 1.0);
        const auto lo = static_cast<std::uint32_t>(seed);
        const auto hi = static_cast<std::uint32_t>(seed >> 32);
        const auto slot = static_cast<std::uint32_t>(i);
        std::seed_seq seq_d{lo, hi, slot, 0u};
        std::seed_seq seq_e{lo, hi, slot, 1u};
        std::mt19937_64 rng_d(seq_d);
        std::mt19937_64 rng_e(seq_e);
        SlotEstimate& out = est[i];
        for (std::uint64_t k = 0; k < samples; ++k) {
            const double rd = std::log1p(snr_d * draw_exp1(rng_d)) / std::numbers::ln2;
            const double re = std::log1p(snr_e * draw_exp1(rng_e)) / std::numbers::ln2;
            out.d.push(rd);
            out.e.push(re);
            out.clamped.push(std::max(rd - re, 0.0));
        }
    });

    SecrecyReport r;
    r.samples = samples;
    r.seed = seed;
    r.surrogate_rate = surrogate_value(s, t, p);
    r.rate_d_mean.resize(n);
    r.rate_d_se.resize(n);
    r.rate_e_mean.resize(n);
    r.rate_e_se.resize(n);
    r.rate_d_lb.resize(n);
    r.rate_e_ub.resize(n);

    double exp_sum = 0.0, exp_var = 0.0, real_sum = 0.0, real_var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = est[i];
        r.rate_d_mean[i] = e.d.mean;
        r.rate_d_se[i] = e.d.std_error();
        r.rate_e_mean[i] = e.e.mean;
        r.rate_e_se[i] = e.e.std_error();
        r.rate_d_lb[i] = rate_lb_dest(s, t[i], p.p_s[i], p.p_u[i]);
        r.rate_e_ub[i] = rate_ub_eve(s, t[i], p.p_s[i], p.p_u[i]);

        exp_sum += std::max(e.d.mean - e.e.mean, 0.0);
        exp_var += r.rate_d_se[i] * r.rate_d_se[i] + r.rate_e_se[i] * r.rate_e_se[i];
        real_sum += e.clamped.mean;
        const double sc = e.clamped.std_error();
        real_var += sc * sc;
    }
    const double nn = static_cast<double>(n);
    r.mc_rate_expectation_form = exp_sum / nn;
    r.mc_rate_realization_form = real_sum / nn;
    // Delta-method errors; the expectation-form clamp is ignored.
    r.std_errors.expectation_form = std::sqrt(exp_var) / nn;
    r.std_errors.realization_form = std::sqrt(real_var) / nn;
    return r;
}

}  // namespace skyjam
