#include "skyjam/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "skyjam/channel.hpp"

namespace skyjam {

namespace {

using Mat2 = Eigen::Matrix2d;

// r(x) = log2(1 + snr x / (jam + x)) and its derivatives in x. This is the
// rate of a link whose interference-plus-noise scales with 1/x, x being the
// squared UAV distance; concave increasing in x.
struct RateTerm {
    double v, d1, d2;
};

RateTerm rate_term(double snr, double jam, double x) {
    const double a = jam + (1.0 + snr) * x;
    const double b = jam + x;
    constexpr double ln2 = std::numbers::ln2;
    return {std::log1p(snr * x / b) / ln2, snr * jam / (a * b * ln2),
            -snr * jam * ((1.0 + snr) * b + a) / (a * a * b * b * ln2)};
}

}  // namespace

P7Coefficients p7_coefficients(const Scenario& s, const Trajectory& q_k, const PowerSchedule& p) {
    const std::size_t n = s.n_slots();
    if (q_k.size() != n || p.p_s.size() != n || p.p_u.size() != n) {
        throw std::invalid_argument("p7_coefficients: length mismatch");
    }
    const double c0 = std::exp(-kEulerGamma) * s.g_d_mean();
    const double e0 = s.g_e_mean();
    P7Coefficients k;
    for (auto* v : {&k.c, &k.e, &k.jam, &k.c_lin, &k.f_anchor, &k.m_anchor, &k.g_const}) v->resize(n);
    k.g_grad.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        k.c[i] = c0 * p.p_s[i];
        k.e[i] = e0 * p.p_s[i];
        k.jam[i] = s.gamma0() * p.p_u[i];
        // m anchor carries the +H^2 so that it matches the slack it linearizes.
        k.m_anchor[i] = (q_k[i] - s.w_e()).squaredNorm() + s.h2();
        const RateTerm eve = rate_term(k.e[i], k.jam[i], k.m_anchor[i]);
        k.c_lin[i] = eve.d1;
        k.f_anchor[i] = eve.v;
        k.g_const[i] = q_k[i].squaredNorm() - s.w_d().squaredNorm();
        k.g_grad[i] = -2.0 * (q_k[i] - s.w_d());
    }
    return k;
}

double g_affine(const P7Coefficients& k, std::size_t n, const Vec2& q) {
    return k.g_const[n] + k.g_grad[n].dot(q);
}

double p7_objective(const Scenario& s, const P7Coefficients& k, const Trajectory& q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double l = s.h2() - g_affine(k, i, q[i]);
        const double m = (q[i] - s.w_e()).squaredNorm() + s.h2();
        sum += rate_term(k.c[i], k.jam[i], l).v - k.c_lin[i] * (m - k.m_anchor[i]) - k.f_anchor[i];
    }
    return sum;
}

double p6_objective(const Scenario& s, const P7Coefficients& k, const Trajectory& q) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double l = (q[i] - s.w_d()).squaredNorm() + s.h2();
        const double m = (q[i] - s.w_e()).squaredNorm() + s.h2();
        sum += rate_term(k.c[i], k.jam[i], l).v - rate_term(k.e[i], k.jam[i], m).v;
    }
    return sum;
}

namespace {

// Log-barrier formulation over the free waypoints q[0..N-2] (q[N-1] = qf).
//   minimize  -t * minorant(q) - sum_j log(L^2 - |q_j - q_{j-1}|^2)
class BarrierSolver {
public:
    BarrierSolver(const Scenario& s, const P7Coefficients& k)
        : s_(s), k_(k), n_(s.n_slots()), free_(n_ - 1),
          l2_(s.step_bound() * s.step_bound()), l_floor_(s.h2() / 100.0) {
        g_.resize(free_);
        dx_.resize(free_);
        diag_.resize(free_);
        off_.resize(free_ > 0 ? free_ - 1 : 0);
        sinv_.resize(free_);
        y_.resize(free_);
    }

    bool guard_hit() const { return guard_hit_; }
    void clear_guard() { guard_hit_ = false; }
    std::size_t steps() const { return steps_; }

    // Interior objective terms; the pinned last waypoint is a constant.
    double objective(const std::vector<Vec2>& x) const {
        double f = 0.0;
        for (std::size_t i = 0; i < free_; ++i) f += slot_value(i, x[i]);
        return f;
    }

    std::optional<double> barrier(const std::vector<Vec2>& x, double t) {
        double logs = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double sj = l2_ - (at(x, j) - before(x, j)).squaredNorm();
            if (!(sj > 0.0)) return std::nullopt;
            logs += std::log(sj);
        }
        for (std::size_t i = 0; i < free_; ++i) {
            if (uses_l(i) && l_of(i, x[i]) < l_floor_) {
                guard_hit_ = true;
                return std::nullopt;
            }
        }
        return -t * objective(x) - logs;
    }

    // Centers at parameter t starting from x (strictly feasible). Returns
    // false if the line search stalled before the Newton decrement vanished.
    bool center(std::vector<Vec2>& x, double t) {
        auto fx = barrier(x, t);
        if (!fx) throw std::logic_error("solve_p7: centering started outside the barrier domain");
        for (int it = 0; it < 200; ++it) {
            assemble(x, t);
            solve_newton();
            double lam2 = 0.0;
            for (std::size_t i = 0; i < free_; ++i) lam2 -= g_[i].dot(dx_[i]);
            if (!(lam2 >= 0.0)) return false;
            if (0.5 * lam2 <= 1e-10) return true;
            ++steps_;

            // Damped phase uses Armijo; near the center only domain
            // membership is enforced since the barrier values are dominated by
            // rounding at large t.
            const bool damped = lam2 > 0.1;
            double alpha = 1.0;
            std::vector<Vec2> trial(free_);
            bool accepted = false;
            while (alpha > 1e-20) {
                for (std::size_t i = 0; i < free_; ++i) trial[i] = x[i] + alpha * dx_[i];
                const auto ft = barrier(trial, t);
                if (ft && (!damped || *ft <= *fx - 0.25 * alpha * lam2)) {
                    x.swap(trial);
                    fx = ft;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) return false;
        }
        return false;
    }

private:
    const Vec2& at(const std::vector<Vec2>& x, std::size_t j) const {
        return j < free_ ? x[j] : s_.qf();
    }
    const Vec2& before(const std::vector<Vec2>& x, std::size_t j) const {
        return j == 0 ? s_.q0() : x[j - 1];
    }

    bool uses_l(std::size_t i) const { return k_.jam[i] > 0.0 && k_.c[i] > 0.0; }

    double l_of(std::size_t i, const Vec2& q) const { return s_.h2() - g_affine(k_, i, q); }

    double slot_value(std::size_t i, const Vec2& q) const {
        const double m = (q - s_.w_e()).squaredNorm() + s_.h2();
        double v = -k_.c_lin[i] * m;
        if (uses_l(i)) v += rate_term(k_.c[i], k_.jam[i], l_of(i, q)).v;
        return v;
    }

    void assemble(const std::vector<Vec2>& x, double t) {
        for (std::size_t i = 0; i < free_; ++i) {
            const Vec2& q = x[i];
            Vec2 grad = -2.0 * k_.c_lin[i] * (q - s_.w_e());
            Mat2 hess = -2.0 * k_.c_lin[i] * Mat2::Identity();
            if (uses_l(i)) {
                const RateTerm r = rate_term(k_.c[i], k_.jam[i], l_of(i, q));
                const Vec2 dl = -k_.g_grad[i];
                grad += r.d1 * dl;
                hess += r.d2 * dl * dl.transpose();
            }
            g_[i] = -t * grad;
            diag_[i] = -t * hess;
        }
        for (auto& e : off_) e.setZero();

        for (std::size_t j = 0; j < n_; ++j) {
            const Vec2 d = at(x, j) - before(x, j);
            const double sj = l2_ - d.squaredNorm();
            const Vec2 gd = 2.0 * d / sj;
            const Mat2 kk = 4.0 * d * d.transpose() / (sj * sj) + (2.0 / sj) * Mat2::Identity();
            const bool head_free = j < free_;
            const bool tail_free = j > 0;
            if (head_free) {
                g_[j] += gd;
                diag_[j] += kk;
            }
            if (tail_free) {
                g_[j - 1] -= gd;
                diag_[j - 1] += kk;
            }
            if (head_free && tail_free) off_[j - 1] -= kk;
        }
    }

    // Block LDL^T of the symmetric block-tridiagonal Hessian.
    void solve_newton() {
        for (std::size_t i = 0; i < free_; ++i) {
            Mat2 si = diag_[i];
            y_[i] = -g_[i];
            if (i > 0) {
                const Mat2 w = sinv_[i - 1] * off_[i - 1];
                si -= off_[i - 1].transpose() * w;
                y_[i] -= w.transpose() * y_[i - 1];
            }
            sinv_[i] = si.inverse();
        }
        for (std::size_t i = free_; i-- > 0;) {
            Vec2 rhs = y_[i];
            if (i + 1 < free_) rhs -= off_[i] * dx_[i + 1];
            dx_[i] = sinv_[i] * rhs;
        }
    }

    const Scenario& s_;
    const P7Coefficients& k_;
    std::size_t n_, free_;
    double l2_, l_floor_;
    bool guard_hit_ = false;
    std::size_t steps_ = 0;

    std::vector<Vec2> g_, dx_, y_;
    std::vector<Mat2> diag_, off_, sinv_;
};

}  // namespace

TrajectoryResult solve_p7(const Scenario& s, const P7Coefficients& k, const Trajectory& q_k) {
    const std::size_t n = s.n_slots();
    if (!check_trajectory(s, q_k).feasible()) {
        throw std::invalid_argument("solve_p7: local trajectory is infeasible");
    }
    TrajectoryResult r;
    r.trajectory = q_k;
    r.kept_local_point = true;

    bool any_active = false;
    for (std::size_t i = 0; i + 1 < n; ++i) any_active |= k.jam[i] > 0.0 && (k.c[i] > 0.0 || k.c_lin[i] > 0.0);
    if (n == 1 || s.is_min_time() || !any_active) return r;

    BarrierSolver solver(s, k);

    // Strictly feasible start: pull q_k slightly toward the uniform straight
    // line, whose steps are strictly shorter than L.
    const Trajectory line = straight_line(s);
    std::vector<Vec2> x(n - 1);
    double theta = 0.05;
    for (;; theta *= 0.5) {
        if (theta < 1e-12) throw std::runtime_error("solve_p7: no strictly feasible start found");
        for (std::size_t i = 0; i + 1 < n; ++i) x[i] = q_k[i] + theta * (line[i] - q_k[i]);
        if (solver.barrier(x, 1.0)) break;
    }
    solver.clear_guard();

    const double constraints = static_cast<double>(n);
    double t = 1.0;
    constexpr double kGrowth = 20.0;
    while (true) {
        solver.center(x, t);
        const double scale = std::max(1.0, std::abs(solver.objective(x)));
        if (constraints / t <= 1e-10 * scale) break;
        t *= kGrowth;
        if (t > 1e18) break;
    }

    Trajectory out;
    out.q = x;
    out.q.push_back(s.qf());
    r.newton_steps = solver.steps();
    r.gap_bound = constraints / t;
    r.guard_activated = solver.guard_hit();
    if (p7_objective(s, k, out) >= p7_objective(s, k, q_k) && check_trajectory(s, out).feasible()) {
        r.trajectory = std::move(out);
        r.kept_local_point = false;
    }
    return r;
}

}  // namespace skyjam
