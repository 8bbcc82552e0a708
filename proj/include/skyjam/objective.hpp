#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skyjam/model.hpp"

namespace skyjam {

/// Bound pair for every slot. No feasibility check.
SlotRates slot_rates(const Scenario& s, const Trajectory& t, const PowerSchedule& p);

/// Mean over slots of (R_D lower bound - R_E upper bound), without the
/// per-slot [.]^+. No feasibility check; for solver inner loops.
double surrogate_value(const Scenario& s, const Trajectory& t, const PowerSchedule& p);

/// Checked variant: throws std::invalid_argument if t or p is infeasible.
double surrogate_objective(const Scenario& s, const Trajectory& t, const PowerSchedule& p);

/// Monte-Carlo estimate of the ergodic secrecy rate under unit-mean
/// Rayleigh fading on the ground links, next to the analytic bounds.
struct SecrecyReport {
    double surrogate_rate = 0.0;
    /// (1/N) sum_n [E R_D[n] - E R_E[n]]^+
    double mc_rate_expectation_form = 0.0;
    /// (1/N) sum_n E[(R_D[n] - R_E[n])^+], the clamp applied per fading draw
    double mc_rate_realization_form = 0.0;

    struct StdErrors {
        double expectation_form = 0.0;
        double realization_form = 0.0;
    } std_errors;

    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    // Per-slot detail.
    std::vector<double> rate_d_mean, rate_d_se;
    std::vector<double> rate_e_mean, rate_e_se;
    std::vector<double> rate_d_lb, rate_e_ub;
};

/// Draws `samples` fading pairs per slot. Each (slot, terminal) pair owns its
/// own generator stream derived from `seed`, so the result does not depend on
/// the worker count. Throws std::invalid_argument if samples == 0.
SecrecyReport mc_secrecy_rate(const Scenario& s, const Trajectory& t, const PowerSchedule& p,
                              std::uint64_t samples, std::uint64_t seed);

}  // namespace skyjam
