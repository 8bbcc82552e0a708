#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "skyjam/channel.hpp"
#include "skyjam/objective.hpp"
#include "skyjam/trajectory.hpp"

using namespace skyjam;

namespace {

PowerSchedule average_powers(const Scenario& s) {
    return {std::vector<double>(s.n_slots(), s.p_s_avg()), std::vector<double>(s.n_slots(), s.p_u_avg())};
}

// Three slots near E with room to manoeuvre.
Scenario three_slots(Vec2 q0, Vec2 qf) {
    auto p = fixture::reference_params(3.0, 1.0);
    p.q0 = q0;
    p.qf = qf;
    p.v_max = 10.0;
    return Scenario::make(p);
}

double eve_rate(double e, double jam, double m) { return std::log2(1.0 + e * m / (jam + m)); }

}  // namespace

TEST_CASE("affine bound on the negated squared distance to D") {
    const Scenario s = fixture::reference(250.0);
    std::mt19937_64 rng(12);
    const Trajectory qk = fixture::random_trajectory(s, rng);
    const auto k = p7_coefficients(s, qk, average_powers(s));
    std::uniform_real_distribution<double> u(-400.0, 400.0);
    for (std::size_t i = 0; i < s.n_slots(); i += 11) {
        CHECK(g_affine(k, i, qk[i]) == doctest::Approx(-(qk[i] - s.w_d()).squaredNorm()).epsilon(1e-12));
        for (int j = 0; j < 20; ++j) {
            const Vec2 q(u(rng), u(rng));
            CHECK(-(q - s.w_d()).squaredNorm() <= g_affine(k, i, q) + 1e-9);
        }
    }
}

TEST_CASE("eavesdropper tangent") {
    SUBCASE("no jamming makes the slope vanish") {
        const Scenario s = fixture::reference(250.0);
        PowerSchedule p = average_powers(s);
        std::fill(p.p_u.begin(), p.p_u.end(), 0.0);
        const auto k = p7_coefficients(s, straight_line(s), p);
        for (double c : k.c_lin) CHECK(c == 0.0);
    }
    SUBCASE("unit example above E") {
        auto prm = fixture::reference_params(250.0);
        prm.altitude_h = 1.0;
        const Scenario s = Scenario::make(prm);
        const std::size_t n = s.n_slots();
        Trajectory q = straight_line(s);
        q.q[0] = s.w_e();
        PowerSchedule p{std::vector<double>(n, 1.0 / s.g_e_mean()), std::vector<double>(n, 1.0 / s.gamma0())};
        const auto k = p7_coefficients(s, q, p);
        CHECK(k.m_anchor[0] == doctest::Approx(1.0));
        CHECK(k.c_lin[0] == doctest::Approx(0.24045).epsilon(1e-4));
    }
    SUBCASE("global upper bound on the eavesdropper rate") {
        const Scenario s = fixture::reference(250.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(-400.0, 600.0);
        for (int rep = 0; rep < 1000; ++rep) {
            const Trajectory qk = fixture::random_trajectory(s, rng);
            const PowerSchedule p = fixture::random_schedule(s, rng);
            const auto k = p7_coefficients(s, qk, p);
            const std::size_t i = static_cast<std::size_t>(rep) % s.n_slots();
            const Vec2 q(u(rng), u(rng));
            const double m = (q - s.w_e()).squaredNorm() + s.h2();
            const double bound = k.f_anchor[i] + k.c_lin[i] * (m - k.m_anchor[i]);
            CHECK(eve_rate(k.e[i], k.jam[i], m) <= bound + 1e-12);
            CHECK(-(q - s.w_d()).squaredNorm() <= g_affine(k, i, q) + 1e-9);
        }
    }
}

TEST_CASE("minorant is tight at the local point and equals the exact objective there") {
    const Scenario s = fixture::reference(250.0, 5.0);
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        const Trajectory qk = fixture::random_trajectory(s, rng);
        const PowerSchedule p = fixture::random_schedule(s, rng);
        const auto k = p7_coefficients(s, qk, p);
        const double exact = p6_objective(s, k, qk);
        CHECK(p7_objective(s, k, qk) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(exact == doctest::Approx(static_cast<double>(s.n_slots()) * surrogate_value(s, qk, p)).epsilon(1e-12));
        const Trajectory other = fixture::random_trajectory(s, rng);
        CHECK(p7_objective(s, k, other) <= p6_objective(s, k, other) + 1e-10);
    }
}

TEST_CASE("solve_p7 degenerate cases return the local point") {
    SUBCASE("single slot") {
        auto prm = fixture::reference_params(1.0);
        prm.q0 = prm.qf = {200.0, 150.0};
        const Scenario s = Scenario::make(prm);
        const Trajectory q = straight_line(s);
        const auto r = solve_p7(s, p7_coefficients(s, q, average_powers(s)), q);
        CHECK(r.kept_local_point);
        CHECK(r.trajectory.q == q.q);
    }
    SUBCASE("minimum-time instance") {
        const Scenario s = fixture::reference(200.0);
        const Trajectory q = straight_line(s);
        const auto r = solve_p7(s, p7_coefficients(s, q, average_powers(s)), q);
        CHECK(r.trajectory.q == q.q);
    }
    SUBCASE("no jamming") {
        const Scenario s = fixture::reference(250.0);
        PowerSchedule p = average_powers(s);
        std::fill(p.p_u.begin(), p.p_u.end(), 0.0);
        const Trajectory q = straight_line(s);
        const auto r = solve_p7(s, p7_coefficients(s, q, p), q);
        CHECK(r.kept_local_point);
        CHECK(r.trajectory.q == q.q);
    }
    SUBCASE("infeasible local point") {
        const Scenario s = fixture::reference(250.0);
        Trajectory q = straight_line(s);
        q.q[5] += Vec2(50.0, 0.0);
        CHECK_THROWS_AS(solve_p7(s, p7_coefficients(s, q, average_powers(s)), q), std::invalid_argument);
    }
}

TEST_CASE("solve_p7 matches a lattice search with three slots") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-15.0, 15.0);
    for (int rep = 0; rep < 4; ++rep) {
        const Vec2 centre(200.0 + u(rng), 200.0 + u(rng));
        const Scenario s = three_slots(centre + Vec2(-8.0, u(rng) / 3.0), centre + Vec2(8.0, u(rng) / 3.0));
        const Trajectory qk = straight_line(s);
        const auto k = p7_coefficients(s, qk, average_powers(s));
        const auto r = solve_p7(s, k, qk);
        REQUIRE(check_trajectory(s, r.trajectory).feasible());
        const double mine = p7_objective(s, k, r.trajectory);

        const double L = s.step_bound();
        auto unpack = [&](const std::vector<double>& x) {
            Trajectory t;
            t.q = {Vec2(x[0], x[1]), Vec2(x[2], x[3]), s.qf()};
            return t;
        };
        auto feasible = [&](const std::vector<double>& x) {
            const Trajectory t = unpack(x);
            return (t[0] - s.q0()).norm() <= L && (t[1] - t[0]).norm() <= L && (t[2] - t[1]).norm() <= L;
        };
        auto f = [&](const std::vector<double>& x) { return p7_objective(s, k, unpack(x)); };
        const std::vector<double> lo{s.q0().x() - L, s.q0().y() - L, s.qf().x() - L, s.qf().y() - L};
        const std::vector<double> hi{s.q0().x() + L, s.q0().y() + L, s.qf().x() + L, s.qf().y() + L};
        const auto g = oracle::zoom_grid_max(4, lo, hi, f, feasible, 41, 11, 6);
        CHECK(mine >= g.value - 1e-9);
        CHECK(std::abs(mine - g.value) <= 1e-3);
    }
}

TEST_CASE("solve_p7 never makes the exact objective worse and stays feasible") {
    const Scenario s = fixture::reference(250.0, 5.0);
    std::mt19937_64 rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        const Trajectory qk = fixture::random_trajectory(s, rng);
        const PowerSchedule p = fixture::random_schedule(s, rng);
        const auto k = p7_coefficients(s, qk, p);
        const auto r = solve_p7(s, k, qk);
        CHECK(check_trajectory(s, r.trajectory).feasible());
        CHECK(p6_objective(s, k, r.trajectory) >= p6_objective(s, k, qk) - 1e-10);
        CHECK(p7_objective(s, k, r.trajectory) >= p7_objective(s, k, qk) - 1e-10);
    }
}
