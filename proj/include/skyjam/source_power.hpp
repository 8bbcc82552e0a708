#pragma once

#include <span>
#include <vector>

#include "skyjam/model.hpp"

namespace skyjam {

/// Effective per-watt SNRs of the source in every slot given the UAV's
/// position and jamming power: a_n toward D (Jensen-discounted by e^-kappa),
/// b_n toward E.
struct P3Coefficients {
    std::vector<double> a;
    std::vector<double> b;
};

P3Coefficients p3_coefficients(const Scenario& s, const Trajectory& t, std::span<const double> p_u);

struct SourcePowerResult {
    std::vector<double> p_s;
    double mu = 0.0;  // multiplier of the average-power budget
};

/// Per-slot maximizer of log2(1 + a x) - log2(1 + b x) - mu x on [0, peak].
/// Zero whenever a <= b.
double source_power_at(double a, double b, double mu, double peak);

/// Optimal source powers for
///   max sum_n log2(1 + a_n p_n) - log2(1 + b_n p_n)
///   s.t. mean(p) <= avg, 0 <= p_n <= peak.
/// Slots with a_n > b_n have a concave objective, the rest are switched off,
/// so the water-filling-style solution is globally optimal. `mu` is found by
/// bisection on the budget.
SourcePowerResult solve_p3(const Scenario& s, const P3Coefficients& c);
SourcePowerResult solve_p3(const P3Coefficients& c, double p_avg, double p_peak);

/// Source-power objective summed over slots, bps/Hz.
double p3_objective(const P3Coefficients& c, std::span<const double> p_s);

}  // namespace skyjam
