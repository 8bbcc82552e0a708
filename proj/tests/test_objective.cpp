#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "skyjam/channel.hpp"
#include "skyjam/objective.hpp"
#include "skyjam/report_io.hpp"

using namespace skyjam;

namespace {

// One slot with the UAV pinned at q0 = qf.
Scenario::Params single_slot(Vec2 where) {
    auto p = fixture::reference_params(1.0, 1.0);
    p.q0 = where;
    p.qf = where;
    return p;
}

}  // namespace

TEST_CASE("surrogate objective with no source power is zero") {
    const Scenario s = fixture::reference(300.0);
    const std::size_t n = s.n_slots();
    const PowerSchedule p{std::vector<double>(n, 0.0), std::vector<double>(n, s.p_u_avg())};
    CHECK(surrogate_objective(s, straight_line(s), p) == 0.0);
}

TEST_CASE("single-slot surrogate is the difference of the two bounds") {
    const Scenario s = Scenario::make(single_slot({150.0, 120.0}));
    const Trajectory t = straight_line(s);
    const PowerSchedule p{{1.0}, {0.01}};
    const double expect = rate_lb_dest(s, t[0], 1.0, 0.01) - rate_ub_eve(s, t[0], 1.0, 0.01);
    CHECK(surrogate_objective(s, t, p) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("surrogate objective rejects infeasible inputs") {
    const Scenario s = fixture::reference(300.0);
    const std::size_t n = s.n_slots();
    const PowerSchedule hot{std::vector<double>(n, s.p_s_peak()), std::vector<double>(n, 0.0)};
    CHECK_THROWS_AS(surrogate_objective(s, straight_line(s), hot), std::invalid_argument);
}

TEST_CASE("jamming above E with D far away raises the objective while E's slope dominates") {
    // D moved far away so jamming barely reaches it.
    auto prm = single_slot({200.0, 200.0});
    prm.w_d = {-2000.0, 0.0};
    prm.pathloss_exp = 2.0;
    const Scenario s = Scenario::make(prm);
    const Trajectory t = straight_line(s);
    const double ps = 2.0;
    auto f = [&](double pu) { return surrogate_value(s, t, {{ps}, {pu}}); };
    auto d_term = [&](double pu) { return rate_lb_dest(s, t[0], ps, pu); };
    auto e_term = [&](double pu) { return rate_ub_eve(s, t[0], ps, pu); };
    for (double pu = 1e-5; pu < s.p_u_peak(); pu *= 2.0) {
        const double h = 1e-3 * pu;
        const double slope_e = -oracle::fd(e_term, pu, h);
        const double slope_d = -oracle::fd(d_term, pu, h);
        if (slope_e > slope_d) CHECK(f(pu + h) > f(pu));
    }
}

TEST_CASE("Monte-Carlo: zero source power gives exactly zero") {
    const Scenario s = fixture::reference(250.0);
    const std::size_t n = s.n_slots();
    const PowerSchedule p{std::vector<double>(n, 0.0), std::vector<double>(n, s.p_u_avg())};
    for (std::uint64_t samples : {1u, 100u}) {
        const auto r = mc_secrecy_rate(s, straight_line(s), p, samples, 3);
        CHECK(r.mc_rate_expectation_form == 0.0);
        CHECK(r.mc_rate_realization_form == 0.0);
        CHECK(r.surrogate_rate == 0.0);
    }
}

TEST_CASE("Monte-Carlo: symmetric terminals have zero secrecy in expectation") {
    auto prm = single_slot({0.0, 300.0});
    prm.w_d = {300.0, 0.0};
    prm.w_e = {-300.0, 0.0};
    const Scenario s = Scenario::make(prm);
    const auto r = mc_secrecy_rate(s, straight_line(s), {{1.0}, {0.0}}, 200'000, 11);
    const double se = std::hypot(r.rate_d_se[0], r.rate_e_se[0]);
    CHECK(std::abs(r.rate_d_mean[0] - r.rate_e_mean[0]) <= 3.0 * se);
    CHECK(r.mc_rate_expectation_form <= 3.0 * se);
}

TEST_CASE("Monte-Carlo matches the exponential-integral closed form") {
    auto prm = single_slot({0.0, 300.0});
    prm.pathloss_exp = std::log(prm.gamma0) / std::log(300.0);  // g_D mean = 1
    const Scenario s = Scenario::make(prm);
    const double expect = oracle::ergodic_rate_rayleigh(1.0);
    CHECK(expect == doctest::Approx(0.860347).epsilon(1e-6));
    const auto r = mc_secrecy_rate(s, straight_line(s), {{1.0}, {0.0}}, 1'000'000, 99);
    CHECK(std::abs(r.rate_d_mean[0] - expect) <= 3.0 * r.rate_d_se[0]);
}

TEST_CASE("Monte-Carlo is reproducible and its error shrinks like 1/sqrt(n)") {
    const Scenario s = fixture::reference(250.0, 5.0);
    std::mt19937_64 rng(8);
    const Trajectory t = fixture::random_trajectory(s, rng);
    const PowerSchedule p = fixture::random_schedule(s, rng);

    const auto a = mc_secrecy_rate(s, t, p, 4000, 42);
    const auto b = mc_secrecy_rate(s, t, p, 4000, 42);
    CHECK(a.mc_rate_expectation_form == b.mc_rate_expectation_form);
    CHECK(a.mc_rate_realization_form == b.mc_rate_realization_form);
    CHECK(a.rate_d_mean == b.rate_d_mean);

    const auto c = mc_secrecy_rate(s, t, p, 4000, 43);
    CHECK(a.rate_d_mean != c.rate_d_mean);

    const auto big = mc_secrecy_rate(s, t, p, 16000, 42);
    const double ratio = a.std_errors.realization_form / big.std_errors.realization_form;
    CHECK(ratio > 1.0);
    CHECK(ratio < 4.0);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.25));

    CHECK_THROWS_AS(mc_secrecy_rate(s, t, p, 0, 1), std::invalid_argument);
}

TEST_CASE("analytic bounds sandwich the Monte-Carlo rates") {
    const Scenario s = fixture::reference(250.0, 5.0);
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 3; ++rep) {
        const Trajectory t = fixture::random_trajectory(s, rng);
        const PowerSchedule p = fixture::random_schedule(s, rng);
        const auto r = mc_secrecy_rate(s, t, p, 20000, 1000 + rep);
        bool all_nonneg = true;
        for (std::size_t i = 0; i < s.n_slots(); ++i) {
            CHECK(r.rate_d_lb[i] <= r.rate_d_mean[i] + 3.0 * r.rate_d_se[i]);
            CHECK(r.rate_e_ub[i] >= r.rate_e_mean[i] - 3.0 * r.rate_e_se[i]);
            all_nonneg &= r.rate_d_lb[i] >= r.rate_e_ub[i];
        }
        if (all_nonneg) {
            CHECK(r.surrogate_rate <= r.mc_rate_expectation_form + 3.0 * r.std_errors.expectation_form);
        }
    }
}

TEST_CASE("SecrecyReport serializes with provenance") {
    const Scenario s = fixture::reference(250.0, 5.0);
    const std::size_t n = s.n_slots();
    const PowerSchedule p{std::vector<double>(n, s.p_s_avg()), std::vector<double>(n, s.p_u_avg())};
    const auto r = mc_secrecy_rate(s, straight_line(s), p, 100, 77);
    const auto j = to_json(r);
    CHECK(j.at("seed").get<std::uint64_t>() == 77);
    CHECK(j.at("samples").get<std::uint64_t>() == 100);
    CHECK(j.at("std_errors").contains("expectation_form"));
    CHECK(j.at("per_slot").at("rate_d_mean").size() == n);
    CHECK(j.at("surrogate_rate").get<double>() == r.surrogate_rate);
}
