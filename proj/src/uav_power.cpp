#include "skyjam/uav_power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skyjam/channel.hpp"

namespace skyjam {

double p5_slope(double c, double d, double p_k) {
    const double u = d * p_k + 1.0;
    return -c * d / (std::numbers::ln2 * u * (u + c));
}

double p5_anchor(double c, double d, double p_k) {
    return std::log1p(c / (d * p_k + 1.0)) / std::numbers::ln2;
}

P5Coefficients p5_coefficients(const Scenario& s, const Trajectory& t,
                               std::span<const double> p_s, std::span<const double> p_u_k) {
    const std::size_t n = s.n_slots();
    if (t.size() != n || p_s.size() != n || p_u_k.size() != n) {
        throw std::invalid_argument("p5_coefficients: length mismatch");
    }
    const double c0 = std::exp(-kEulerGamma) * s.g_d_mean();
    const double e0 = s.g_e_mean();
    P5Coefficients k;
    for (auto* v : {&k.c, &k.d, &k.e, &k.f, &k.a_lin, &k.b_lin}) v->resize(n);
    k.p_u_k.assign(p_u_k.begin(), p_u_k.end());
    for (std::size_t i = 0; i < n; ++i) {
        k.c[i] = c0 * p_s[i];
        k.d[i] = uav_gain(s, t[i], s.w_d());
        k.e[i] = e0 * p_s[i];
        k.f[i] = uav_gain(s, t[i], s.w_e());
        k.a_lin[i] = p5_slope(k.c[i], k.d[i], p_u_k[i]);
        k.b_lin[i] = p5_anchor(k.c[i], k.d[i], p_u_k[i]);
    }
    return k;
}

double uav_power_at(double a_lin, double e, double f, double nu, double peak) {
    if (e <= 0.0) return 0.0;
    const double slope = nu - a_lin;  // >= 0 since a_lin <= 0
    if (slope <= 0.0) return peak;
    // Zero of a_lin - nu + e f / (ln2 (f p + 1)(f p + e + 1)): with
    // u = f p + 1, u (u + e) = K.
    const double k = e * f / (std::numbers::ln2 * slope);
    if (!std::isfinite(k)) return peak;
    const double u = 2.0 * k / (e + std::sqrt(e * e + 4.0 * k));
    return std::clamp((u - 1.0) / f, 0.0, peak);
}

namespace {

double total_power(const P5Coefficients& k, double nu, double peak) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k.e.size(); ++i) sum += uav_power_at(k.a_lin[i], k.e[i], k.f[i], nu, peak);
    return sum;
}

}  // namespace

UavPowerResult solve_p5(const P5Coefficients& k, double p_avg, double p_peak) {
    const std::size_t n = k.e.size();
    const double budget = p_avg * static_cast<double>(n);
    UavPowerResult r;
    r.p_u.resize(n);
    auto fill = [&](double nu) {
        r.nu = nu;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r.p_u[i] = uav_power_at(k.a_lin[i], k.e[i], k.f[i], nu, p_peak);
            sum += r.p_u[i];
        }
        r.dual_gap = nu * std::max(0.0, budget - sum);
    };

    if (total_power(k, 0.0, p_peak) <= budget) {
        fill(0.0);
        return r;
    }

    double hi = 1.0;
    while (total_power(k, hi, p_peak) > budget) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw std::runtime_error("solve_p5: multiplier bracket diverged");
    }
    double lo = 0.0;
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double tot = total_power(k, mid, p_peak);
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

UavPowerResult solve_p5(const Scenario& s, const P5Coefficients& coef) {
    return solve_p5(coef, s.p_u_avg(), s.p_u_peak());
}

double p5_objective(const P5Coefficients& k, std::span<const double> p_u) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k.e.size(); ++i) {
        sum += k.a_lin[i] * p_u[i] - std::log1p(k.e[i] / (k.f[i] * p_u[i] + 1.0)) / std::numbers::ln2;
    }
    return sum;
}

double p4_objective(const P5Coefficients& k, std::span<const double> p_u) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k.e.size(); ++i) {
        sum += (std::log1p(k.c[i] / (k.d[i] * p_u[i] + 1.0)) -
                std::log1p(k.e[i] / (k.f[i] * p_u[i] + 1.0))) /
               std::numbers::ln2;
    }
    return sum;
}

}  // namespace skyjam
