#pragma once

#include <span>
#include <vector>

#include "skyjam/model.hpp"

namespace skyjam {

/// Per-slot constants of the jamming-power subproblem, plus the tangent of the
/// destination term at the local point p_u_k:
///   log2(1 + c/(d p + 1)) >= a_lin (p - p_k) + b_lin.
struct P5Coefficients {
    std::vector<double> c, d, e, f;
    std::vector<double> a_lin, b_lin;
    std::vector<double> p_u_k;
};

P5Coefficients p5_coefficients(const Scenario& s, const Trajectory& t,
                               std::span<const double> p_s, std::span<const double> p_u_k);

/// Tangent slope and value of log2(1 + c/(d p + 1)) at p_k.
double p5_slope(double c, double d, double p_k);
double p5_anchor(double c, double d, double p_k);

struct UavPowerResult {
    std::vector<double> p_u;
    double nu = 0.0;        // multiplier of the average-power budget
    double dual_gap = 0.0;  // Lagrangian bound minus primal value, >= 0
};

/// Maximizer of a_lin p - log2(1 + e/(f p + 1)) - nu p on [0, peak].
double uav_power_at(double a_lin, double e, double f, double nu, double peak);

/// Solves the convexified jamming-power problem by dual bisection on the
/// average-power multiplier. Each slot is a closed-form quadratic root.
UavPowerResult solve_p5(const Scenario& s, const P5Coefficients& coef);
UavPowerResult solve_p5(const P5Coefficients& coef, double p_avg, double p_peak);

/// Convexified objective: sum_n a_lin p_n - log2(1 + e_n/(f_n p_n + 1)).
double p5_objective(const P5Coefficients& coef, std::span<const double> p_u);
/// Exact difference-of-logs objective it approximates.
double p4_objective(const P5Coefficients& coef, std::span<const double> p_u);

}  // namespace skyjam
