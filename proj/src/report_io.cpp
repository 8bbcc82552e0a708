#include "skyjam/report_io.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace skyjam {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
    return {buf.data(), res.ptr};
}

namespace {

nlohmann::json vec(const Vec2& v) { return nlohmann::json::array({v.x(), v.y()}); }

}  // namespace

nlohmann::json to_json(const Scenario& s) {
    return {
        {"ws", vec(s.w_s())},
        {"wd", vec(s.w_d())},
        {"we", vec(s.w_e())},
        {"q0", vec(s.q0())},
        {"qf", vec(s.qf())},
        {"H", s.altitude()},
        {"V", s.v_max()},
        {"T", s.period()},
        {"N", s.n_slots()},
        {"dt", s.slot_len()},
        {"gamma0_db", linear_to_db(s.gamma0())},
        {"pathloss_exp", s.pathloss_exp()},
        {"ps_avg_dbm", watts_to_dbm(s.p_s_avg())},
        {"ps_peak_dbm", watts_to_dbm(s.p_s_peak())},
        {"pu_avg_dbm", watts_to_dbm(s.p_u_avg())},
        {"pu_peak_dbm", watts_to_dbm(s.p_u_peak())},
        {"epsilon", s.epsilon()},
    };
}

nlohmann::json to_json(const Solution& sol) {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& q : sol.trajectory.q) traj.push_back(vec(q));
    nlohmann::json rates = nlohmann::json::array();
    for (const auto& [lo, up] : sol.per_slot_rates) rates.push_back({lo, up});
    return {
        {"objective_bps_hz", sol.objective},
        {"converged", sol.converged},
        {"trace", sol.trace},
        {"trajectory", traj},
        {"p_s_w", sol.schedule.p_s},
        {"p_u_w", sol.schedule.p_u},
        {"per_slot_rates", rates},
    };
}

nlohmann::json to_json(const SecrecyReport& r) {
    return {
        {"surrogate_rate", r.surrogate_rate},
        {"mc_rate_expectation_form", r.mc_rate_expectation_form},
        {"mc_rate_realization_form", r.mc_rate_realization_form},
        {"std_errors",
         {{"expectation_form", r.std_errors.expectation_form},
          {"realization_form", r.std_errors.realization_form}}},
        {"samples", r.samples},
        {"seed", r.seed},
        {"per_slot",
         {{"rate_d_mean", r.rate_d_mean},
          {"rate_d_se", r.rate_d_se},
          {"rate_e_mean", r.rate_e_mean},
          {"rate_e_se", r.rate_e_se},
          {"rate_d_lb", r.rate_d_lb},
          {"rate_e_ub", r.rate_e_ub}}},
    };
}

nlohmann::json to_json(const TraceRecord& r) {
    return {{"iteration", r.iteration}, {"objective", r.objective}, {"wall_time_s", r.wall_time_s}};
}

void write_trajectory_csv(std::ostream& os, const Solution& sol) {
    os << "slot,x_m,y_m,p_s_w,p_u_w\n";
    for (std::size_t i = 0; i < sol.trajectory.size(); ++i) {
        const auto& q = sol.trajectory[i];
        os << (i + 1) << ',' << format_double(q.x()) << ',' << format_double(q.y()) << ','
           << format_double(sol.schedule.p_s[i]) << ',' << format_double(sol.schedule.p_u[i]) << '\n';
    }
}

}  // namespace skyjam
