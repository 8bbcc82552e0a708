#pragma once

#include <numbers>

#include "skyjam/model.hpp"

namespace skyjam {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Noise-normalized gains seen in one slot.
struct SlotGains {
    double h_d_norm;  // UAV -> D, LoS
    double h_e_norm;  // UAV -> E, LoS
    double g_d_mean;  // S -> D, mean of the Rayleigh-faded gain
    double g_e_mean;  // S -> E
};

/// gamma0 / (|q - w|^2 + H^2).
double uav_gain(const Scenario& s, const Vec2& q, const Vec2& w);

SlotGains slot_gains(const Scenario& s, const Vec2& q);

/// Jensen lower bound on the destination's ergodic rate in one slot:
/// log2(1 + e^-kappa g_D p_s / (h_D p_u + 1)).
double rate_lb_dest(const Scenario& s, const Vec2& q, double p_s, double p_u);

/// Concavity upper bound on the eavesdropper's ergodic rate in one slot:
/// log2(1 + g_E p_s / (h_E p_u + 1)).
double rate_ub_eve(const Scenario& s, const Vec2& q, double p_s, double p_u);

/// E[ln X] for X ~ Exp(lambda), i.e. -ln(lambda) - kappa.
/// Throws std::domain_error for lambda <= 0.
double expected_ln_exponential(double lambda);

}  // namespace skyjam
