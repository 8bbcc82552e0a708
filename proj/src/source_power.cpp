#include "skyjam/source_power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skyjam/channel.hpp"

namespace skyjam {

P3Coefficients p3_coefficients(const Scenario& s, const Trajectory& t, std::span<const double> p_u) {
    const std::size_t n = s.n_slots();
    if (t.size() != n || p_u.size() != n) throw std::invalid_argument("p3_coefficients: length mismatch");
    const double a0 = std::exp(-kEulerGamma) * s.g_d_mean();
    const double b0 = s.g_e_mean();
    P3Coefficients c;
    c.a.resize(n);
    c.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.a[i] = a0 / (uav_gain(s, t[i], s.w_d()) * p_u[i] + 1.0);
        c.b[i] = b0 / (uav_gain(s, t[i], s.w_e()) * p_u[i] + 1.0);
    }
    return c;
}

double source_power_at(double a, double b, double mu, double peak) {
    if (a <= b) return 0.0;
    if (mu <= 0.0) return peak;
    // Stationarity (1 + a x)(1 + b x) = K with K = (a - b) / (mu ln2); the
    // positive root written without cancellation.
    const double k = (a - b) / (mu * std::numbers::ln2);
    if (!std::isfinite(k)) return peak;
    const double x = 2.0 * (k - 1.0) / ((a + b) + std::sqrt((a - b) * (a - b) + 4.0 * a * b * k));
    return std::clamp(x, 0.0, peak);
}

namespace {

double total_power(const P3Coefficients& c, double mu, double peak) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c.a.size(); ++i) sum += source_power_at(c.a[i], c.b[i], mu, peak);
    return sum;
}

}  // namespace

SourcePowerResult solve_p3(const P3Coefficients& c, double p_avg, double p_peak) {
    const std::size_t n = c.a.size();
    if (c.b.size() != n) throw std::invalid_argument("solve_p3: coefficient length mismatch");
    const double budget = p_avg * static_cast<double>(n);

    SourcePowerResult r;
    r.p_s.resize(n);
    auto fill = [&](double mu) {
        r.mu = mu;
        for (std::size_t i = 0; i < n; ++i) r.p_s[i] = source_power_at(c.a[i], c.b[i], mu, p_peak);
    };

    // Peak-limited regime: the budget is slack at mu = 0.
    if (total_power(c, 0.0, p_peak) <= budget) {
        fill(0.0);
        return r;
    }

    double hi = 1.0;
    while (total_power(c, hi, p_peak) > budget) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw std::runtime_error("solve_p3: multiplier bracket diverged");
    }
    double lo = 0.0;
    // Invariant: total(lo) > budget >= total(hi).
    // Stops on the budget residual or when the bracket hits double resolution.
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double tot = total_power(c, mid, p_peak);
        if (tot > budget) {
            lo = mid;
        } else {
            hi = mid;
            if (budget - tot <= 1e-12 * budget) break;
        }
    }
    fill(hi);
    return r;
}

SourcePowerResult solve_p3(const Scenario& s, const P3Coefficients& c) {
    return solve_p3(c, s.p_s_avg(), s.p_s_peak());
}

double p3_objective(const P3Coefficients& c, std::span<const double> p_s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c.a.size(); ++i) {
        sum += (std::log1p(c.a[i] * p_s[i]) - std::log1p(c.b[i] * p_s[i])) / std::numbers::ln2;
    }
    return sum;
}

}  // namespace skyjam
