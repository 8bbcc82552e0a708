#include "skyjam/baselines.hpp"

#include <chrono>
#include <cmath>

#include "skyjam/objective.hpp"
#include "skyjam/source_power.hpp"
#include "skyjam/trajectory.hpp"
#include "skyjam/uav_power.hpp"

namespace skyjam {

std::string to_string(SchemeId id) {
    switch (id) {
        case SchemeId::JTP: return "jtp";
        case SchemeId::TNP: return "tnp";
        case SchemeId::LTP: return "ltp";
        case SchemeId::NJ: return "nj";
    }
    return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (SchemeId id : kAllSchemes) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

namespace {

// Slots needed to cover `dist` at full speed.
std::size_t slots_for(double dist, double step) {
    if (dist <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(dist / step - 1e-9));
}

// Waypoints sampled at equal arc length along q0 -> turn -> qf.
Trajectory along_polyline(const Scenario& s, const Vec2& turn) {
    const std::size_t n = s.n_slots();
    const double len1 = (turn - s.q0()).norm();
    const double len2 = (s.qf() - turn).norm();
    const double spacing = (len1 + len2) / static_cast<double>(n);
    Trajectory t;
    t.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double arc = spacing * static_cast<double>(i + 1);
        if (arc <= len1) {
            t.q[i] = len1 > 0.0 ? Vec2(s.q0() + (arc / len1) * (turn - s.q0())) : s.q0();
        } else {
            const double rest = std::min(arc - len1, len2);
            t.q[i] = len2 > 0.0 ? Vec2(turn + (rest / len2) * (s.qf() - turn)) : turn;
        }
    }
    t.q[n - 1] = s.qf();
    return t;
}

}  // namespace

Trajectory build_ltp_trajectory(const Scenario& s) {
    if (s.is_min_time()) return straight_line(s);

    const std::size_t n = s.n_slots();
    const double step = s.step_bound();
    const Vec2& target = s.w_e();
    const double d1 = (target - s.q0()).norm();
    const double d2 = (s.qf() - target).norm();
    const std::size_t n1 = slots_for(d1, step);
    const std::size_t n2 = slots_for(d2, step);

    if (n1 + n2 <= n) {
        Trajectory t;
        t.q.resize(n);
        const std::size_t depart = n - n2;  // last slot spent at the hover point
        for (std::size_t i = 1; i <= n; ++i) {
            Vec2 q;
            if (i <= n1) {
                const double arc = std::min(step * static_cast<double>(i), d1);
                q = s.q0() + (arc / d1) * (target - s.q0());
            } else if (i <= depart) {
                q = target;
            } else {
                const double arc = std::min(step * static_cast<double>(i - depart), d2);
                q = target + (arc / d2) * (s.qf() - target);
            }
            t.q[i - 1] = q;
        }
        t.q[n - 1] = s.qf();
        return t;
    }

    // Turn point: the path length s + |qf - P(s)| is non-decreasing in s, so
    // bisect for the largest s that still fits in N * L.
    const double budget = static_cast<double>(n) * step;
    const Vec2 dir = d1 > 0.0 ? Vec2((target - s.q0()) / d1) : Vec2::Zero();
    auto length = [&](double arc) { return arc + (s.qf() - (s.q0() + arc * dir)).norm(); };
    double lo = 0.0, hi = d1;
    if (length(hi) <= budget) {
        lo = hi;
    } else {
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (length(mid) <= budget ? lo : hi) = mid;
        }
    }
    return along_polyline(s, s.q0() + lo * dir);
}

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Solution finish(const Scenario& s, Trajectory q, PowerSchedule p, std::vector<double> trace, bool conv) {
    Solution sol;
    sol.objective = surrogate_value(s, q, p);
    sol.per_slot_rates = slot_rates(s, q, p);
    sol.trajectory = std::move(q);
    sol.schedule = std::move(p);
    sol.trace = std::move(trace);
    sol.converged = conv;
    return sol;
}

}  // namespace

Solution run_tnp(const Scenario& s, const BcdConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Trajectory q = initial_trajectory(s, cfg);
    const PowerSchedule p = initial_schedule(s, cfg);
    double prev = surrogate_value(s, q, p);
    std::vector<double> trace;
    bool conv = false;
    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        double obj = prev;
        try {
            auto r = solve_p7(s, p7_coefficients(s, q, p), q);
            const double v = surrogate_value(s, r.trajectory, p);
            if (v >= obj) {
                q = std::move(r.trajectory);
                obj = v;
            }
        } catch (const std::exception& e) {
            throw SolverError(it, e.what());
        }
        trace.push_back(obj);
        if (cfg.trace_sink) cfg.trace_sink({it, obj, elapsed(t0)});
        if (converged_by_fraction(prev, obj, cfg.epsilon)) {
            conv = true;
            break;
        }
        prev = obj;
    }
    return finish(s, std::move(q), p, std::move(trace), conv);
}

Solution run_ltp(const Scenario& s, const BcdConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory q = build_ltp_trajectory(s);
    PowerSchedule p = initial_schedule(s, cfg);
    double prev = surrogate_value(s, q, p);
    std::vector<double> trace;
    bool conv = false;
    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        double obj = prev;
        try {
            const auto r3 = solve_p3(s, p3_coefficients(s, q, p.p_u));
            PowerSchedule cand{r3.p_s, p.p_u};
            double v = surrogate_value(s, q, cand);
            if (v >= obj) {
                p = std::move(cand);
                obj = v;
            }
            for (std::size_t k = 0; k < cfg.sca_inner_steps; ++k) {
                const auto r5 = solve_p5(s, p5_coefficients(s, q, p.p_s, p.p_u));
                cand = PowerSchedule{p.p_s, r5.p_u};
                v = surrogate_value(s, q, cand);
                if (v >= obj) {
                    p = std::move(cand);
                    obj = v;
                }
            }
        } catch (const std::exception& e) {
            throw SolverError(it, e.what());
        }
        trace.push_back(obj);
        if (cfg.trace_sink) cfg.trace_sink({it, obj, elapsed(t0)});
        if (converged_by_fraction(prev, obj, cfg.epsilon)) {
            conv = true;
            break;
        }
        prev = obj;
    }
    return finish(s, q, std::move(p), std::move(trace), conv);
}

Solution run_nj(const Scenario& s) {
    const std::size_t n = s.n_slots();
    const Trajectory q = straight_line(s);
    const std::vector<double> no_jam(n, 0.0);
    const auto r = solve_p3(s, p3_coefficients(s, q, no_jam));
    PowerSchedule p{r.p_s, no_jam};
    const double obj = surrogate_value(s, q, p);
    return finish(s, q, std::move(p), {obj}, true);
}

Solution run_scheme(const Scenario& s, SchemeId id, const BcdConfig& cfg) {
    switch (id) {
        case SchemeId::JTP: return bcd_optimize(s, cfg);
        case SchemeId::TNP: return run_tnp(s, cfg);
        case SchemeId::LTP: return run_ltp(s, cfg);
        case SchemeId::NJ: return run_nj(s);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace skyjam
