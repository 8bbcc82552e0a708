#include "skyjam/driver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "skyjam/baselines.hpp"
#include "skyjam/objective.hpp"
#include "skyjam/source_power.hpp"
#include "skyjam/trajectory.hpp"
#include "skyjam/uav_power.hpp"

namespace skyjam {

void BcdConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("BcdConfig: epsilon must be > 0");
    if (max_iters < 1) throw std::invalid_argument("BcdConfig: max_iters must be >= 1");
    if (sca_inner_steps < 1) throw std::invalid_argument("BcdConfig: sca_inner_steps must be >= 1");
}

Trajectory initial_trajectory(const Scenario& s, const BcdConfig& cfg) {
    switch (cfg.init_trajectory_mode) {
        case InitTrajectory::StraightLine: return straight_line(s);
        case InitTrajectory::BestEffortLtp: return build_ltp_trajectory(s);
    }
    return straight_line(s);
}

PowerSchedule initial_schedule(const Scenario& s, const BcdConfig&) {
    return {std::vector<double>(s.n_slots(), s.p_s_avg()), std::vector<double>(s.n_slots(), s.p_u_avg())};
}

bool converged_by_fraction(double prev, double obj, double epsilon) {
    return (obj - prev) / std::max(std::abs(prev), 1e-12) < epsilon;
}

namespace {

void require_feasible(const Scenario& s, const Trajectory& q, const PowerSchedule& p) {
    const Verdict vt = check_trajectory(s, q);
    const Verdict vp = check_schedule(s, p);
    if (vt.feasible() && vp.feasible()) return;
    std::ostringstream os;
    os << "iterate left the feasible set (worst violation "
       << std::max(vt.worst(), vp.worst()) << ")";
    throw std::runtime_error(os.str());
}

}  // namespace

Solution bcd_optimize(const Scenario& s, const BcdConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    Trajectory q = initial_trajectory(s, cfg);
    PowerSchedule p = initial_schedule(s, cfg);
    double prev = surrogate_value(s, q, p);

    Solution sol;
    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        double obj = prev;
        try {
            {
                const auto r = solve_p3(s, p3_coefficients(s, q, p.p_u));
                PowerSchedule cand{r.p_s, p.p_u};
                const double v = surrogate_value(s, q, cand);
                if (v >= obj) {
                    p = std::move(cand);
                    obj = v;
                }
            }
            for (std::size_t k = 0; k < cfg.sca_inner_steps; ++k) {
                const auto r = solve_p5(s, p5_coefficients(s, q, p.p_s, p.p_u));
                PowerSchedule cand{p.p_s, r.p_u};
                const double v = surrogate_value(s, q, cand);
                if (v >= obj) {
                    p = std::move(cand);
                    obj = v;
                }
            }
            for (std::size_t k = 0; k < cfg.sca_inner_steps; ++k) {
                auto r = solve_p7(s, p7_coefficients(s, q, p), q);
                const double v = surrogate_value(s, r.trajectory, p);
                if (v >= obj) {
                    q = std::move(r.trajectory);
                    obj = v;
                }
            }
            require_feasible(s, q, p);
        } catch (const SolverError&) {
            throw;
        } catch (const std::exception& e) {
            throw SolverError(it, e.what());
        }

        sol.trace.push_back(obj);
        if (cfg.trace_sink) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            cfg.trace_sink({it, obj, dt.count()});
        }
        if (converged_by_fraction(prev, obj, cfg.epsilon)) {
            sol.converged = true;
            break;
        }
        prev = obj;
    }

    sol.objective = surrogate_value(s, q, p);
    sol.per_slot_rates = slot_rates(s, q, p);
    sol.trajectory = std::move(q);
    sol.schedule = std::move(p);
    return sol;
}

}  // namespace skyjam
