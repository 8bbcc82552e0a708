#pragma once

#include <cstddef>
#include <vector>

#include "skyjam/model.hpp"

namespace skyjam {

/// Linearized trajectory subproblem around a local trajectory q_k, for fixed
/// powers. Per slot n the concave minorant of the true objective is
///
///   log2(1 + c_n / (jam_n / l_n(q) + 1)) - c_lin_n * (|q - w_E|^2 + H^2)
///     + c_lin_n * m_anchor_n - f_anchor_n
///
/// with l_n(q) = H^2 - (g_const_n + g_grad_n . q) an affine under-estimate of
/// |q - w_D|^2 + H^2 and jam_n = gamma0 * p_u[n].
struct P7Coefficients {
    std::vector<double> c, e, jam;
    std::vector<double> c_lin;
    std::vector<double> f_anchor;
    std::vector<double> m_anchor;  // |q_k - w_E|^2 + H^2
    std::vector<double> g_const;
    std::vector<Vec2> g_grad;
};

P7Coefficients p7_coefficients(const Scenario& s, const Trajectory& q_k, const PowerSchedule& p);

/// G_n(q), the affine upper bound on -|q - w_D|^2 that is tight at q_k[n].
double g_affine(const P7Coefficients& k, std::size_t n, const Vec2& q);

/// Concave minorant summed over slots (tight at q_k).
double p7_objective(const Scenario& s, const P7Coefficients& k, const Trajectory& q);

/// Exact trajectory objective for the powers the coefficients were built from:
/// sum_n R_D lower bound - R_E upper bound.
double p6_objective(const Scenario& s, const P7Coefficients& k, const Trajectory& q);

struct TrajectoryResult {
    Trajectory trajectory;
    std::size_t newton_steps = 0;
    double gap_bound = 0.0;      // barrier duality-gap bound on the minorant
    bool guard_activated = false;  // a line search was cut to keep l_n >= H^2/100
    bool kept_local_point = false;
};

/// Maximizes the concave minorant subject to the mobility constraints with a
/// log-barrier Newton method. The Hessian is block tridiagonal (2x2 blocks,
/// one per free waypoint) and is factored in O(N). Returns q_k unchanged when
/// the feasible set is a single path or when nothing improves on q_k.
/// Throws std::invalid_argument if q_k is infeasible.
TrajectoryResult solve_p7(const Scenario& s, const P7Coefficients& k, const Trajectory& q_k);

}  // namespace skyjam
