#include "skyjam/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace skyjam {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

void require_positive(double v, const char* field) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw ScenarioError(field, "must be positive and finite");
    }
}

void require_finite(const Vec2& v, const char* field) {
    if (!v.allFinite()) throw ScenarioError(field, "must be finite");
}

}  // namespace

Scenario::Scenario(const Params& p) : p_(p) {
    slot_len_ = p_.period_t / static_cast<double>(p_.n_slots);
    step_bound_ = p_.v_max * slot_len_;
    d_sd_ = (p_.w_d - p_.w_s).norm();
    d_se_ = (p_.w_e - p_.w_s).norm();
    g_d_mean_ = p_.gamma0 * std::pow(d_sd_, -p_.pathloss_exp);
    g_e_mean_ = p_.gamma0 * std::pow(d_se_, -p_.pathloss_exp);
}

Scenario Scenario::make(const Params& p) {
    require_finite(p.w_s, "ws");
    require_finite(p.w_d, "wd");
    require_finite(p.w_e, "we");
    require_finite(p.q0, "q0");
    require_finite(p.qf, "qf");
    require_positive(p.altitude_h, "H");
    require_positive(p.v_max, "V");
    require_positive(p.period_t, "T");
    if (p.n_slots < 1) throw ScenarioError("N", "must be at least 1");
    require_positive(p.gamma0, "gamma0_db");
    if (!std::isfinite(p.pathloss_exp) || p.pathloss_exp < 2.0) {
        throw ScenarioError("pathloss_exp", "must be finite and >= 2");
    }
    require_positive(p.p_s_avg, "ps_avg_dbm");
    require_positive(p.p_s_peak, "ps_peak_dbm");
    require_positive(p.p_u_avg, "pu_avg_dbm");
    require_positive(p.p_u_peak, "pu_peak_dbm");
    require_positive(p.epsilon, "epsilon");
    if (p.p_s_avg > p.p_s_peak) throw ScenarioError("ps_avg_dbm", "exceeds ps_peak_dbm");
    if (p.p_u_avg > p.p_u_peak) throw ScenarioError("pu_avg_dbm", "exceeds pu_peak_dbm");
    if ((p.w_d - p.w_s).norm() == 0.0) throw ScenarioError("wd", "coincides with ws");
    if ((p.w_e - p.w_s).norm() == 0.0) throw ScenarioError("we", "coincides with ws");

    Scenario s(p);
    const double need = (p.qf - p.q0).norm();
    const double reach = static_cast<double>(p.n_slots) * s.step_bound_;
    if (need > reach * (1.0 + kFeasTol)) {
        std::ostringstream os;
        os << "endpoint distance " << need << " m exceeds reachable " << reach
           << " m (N * V * dt)";
        throw ScenarioError("T", os.str());
    }
    return s;
}

bool Scenario::is_min_time() const noexcept {
    const double need = (p_.qf - p_.q0).norm();
    const double reach = static_cast<double>(p_.n_slots) * step_bound_;
    return need >= reach * (1.0 - 1e-12);
}

Scenario Scenario::with_period(double period_t) const {
    Params p = p_;
    p.period_t = period_t;
    const double n = std::llround(period_t / slot_len_);
    p.n_slots = static_cast<std::size_t>(std::max(1.0, n));
    return make(p);
}

namespace {

const nlohmann::json& required(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) throw ScenarioError(key, "missing required key");
    return *it;
}

double number(const nlohmann::json& doc, const char* key) {
    const auto& v = required(doc, key);
    if (!v.is_number()) throw ScenarioError(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(key, "must be finite");
    return x;
}

Vec2 point(const nlohmann::json& doc, const char* key) {
    const auto& v = required(doc, key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ScenarioError(key, "must be a 2-element numeric array");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Scenario build_scenario(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ScenarioError("<root>", "scenario must be a JSON object");

    Scenario::Params p;
    p.w_s = point(doc, "ws");
    p.w_d = point(doc, "wd");
    p.w_e = point(doc, "we");
    p.q0 = point(doc, "q0");
    p.qf = point(doc, "qf");
    p.altitude_h = number(doc, "H");
    p.v_max = number(doc, "V");
    p.period_t = number(doc, "T");
    require_positive(p.period_t, "T");

    const bool has_dt = doc.contains("dt");
    const bool has_n = doc.contains("N");
    if (has_dt && has_n) throw ScenarioError("dt", "give either dt or N, not both");
    if (has_n) {
        const auto& v = doc.at("N");
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw ScenarioError("N", "must be a positive integer");
        }
        p.n_slots = v.get<std::size_t>();
    } else {
        const double dt = has_dt ? number(doc, "dt") : 1.0;
        require_positive(dt, "dt");
        const double n = std::llround(p.period_t / dt);
        if (n < 1.0) throw ScenarioError("dt", "longer than the flight period");
        p.n_slots = static_cast<std::size_t>(n);
    }

    p.gamma0 = db_to_linear(number(doc, "gamma0_db"));
    p.pathloss_exp = doc.contains("pathloss_exp") ? number(doc, "pathloss_exp") : 3.0;
    p.p_s_avg = dbm_to_watts(number(doc, "ps_avg_dbm"));
    p.p_s_peak = dbm_to_watts(number(doc, "ps_peak_dbm"));
    p.p_u_avg = dbm_to_watts(number(doc, "pu_avg_dbm"));
    p.p_u_peak = dbm_to_watts(number(doc, "pu_peak_dbm"));
    p.epsilon = doc.contains("epsilon") ? number(doc, "epsilon") : 1e-4;
    return Scenario::make(p);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("<file>", "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError("<file>", std::string("malformed JSON: ") + e.what());
    }
    return build_scenario(doc);
}

Trajectory straight_line(const Scenario& s) {
    const std::size_t n = s.n_slots();
    Trajectory t;
    t.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i + 1) / static_cast<double>(n);
        t.q[i] = s.q0() + frac * (s.qf() - s.q0());
    }
    t.q[n - 1] = s.qf();
    return t;
}

double Verdict::worst() const noexcept {
    double w = 0.0;
    for (const auto& v : violations) w = std::max(w, v.magnitude);
    return w;
}

Verdict check_trajectory(const Scenario& s, const Trajectory& t) {
    const std::size_t n = s.n_slots();
    if (t.size() != n) {
        throw std::invalid_argument("trajectory has " + std::to_string(t.size()) +
                                    " waypoints, scenario has " + std::to_string(n) + " slots");
    }
    Verdict v;
    const double l = s.step_bound();
    const double l2_tol = l * l * (1.0 + kFeasTol);

    auto check_step = [&](const Vec2& a, const Vec2& b, Violation::Kind kind, std::size_t idx) {
        const double d2 = (b - a).squaredNorm();
        if (d2 > l2_tol) v.violations.push_back({kind, idx, std::sqrt(d2) - l});
    };
    check_step(s.q0(), t[0], Violation::Kind::FirstStep, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) check_step(t[i], t[i + 1], Violation::Kind::Step, i);

    const double end_err = (t[n - 1] - s.qf()).norm();
    if (end_err > kFeasTol * std::max(1.0, s.qf().norm())) {
        v.violations.push_back({Violation::Kind::FinalPoint, n - 1, end_err});
    }
    return v;
}

namespace {

void check_power(const std::vector<double>& p, double avg, double peak, char who,
                 std::size_t n, Verdict& v) {
    if (p.size() != n) {
        throw std::invalid_argument(std::string("power sequence ") + who + " has " +
                                    std::to_string(p.size()) + " entries, expected " +
                                    std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] < 0.0 || !std::isfinite(p[i])) {
            v.violations.push_back({Violation::Kind::NegativePower, i, -p[i], who});
        } else if (p[i] > peak * (1.0 + kFeasTol)) {
            v.violations.push_back({Violation::Kind::PeakPower, i, p[i] - peak, who});
        }
    }
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(n);
    if (mean > avg * (1.0 + kFeasTol)) {
        v.violations.push_back({Violation::Kind::AveragePower, 0, mean - avg, who});
    }
}

}  // namespace

Verdict check_schedule(const Scenario& s, const PowerSchedule& p) {
    Verdict v;
    check_power(p.p_s, s.p_s_avg(), s.p_s_peak(), 'S', s.n_slots(), v);
    check_power(p.p_u, s.p_u_avg(), s.p_u_peak(), 'U', s.n_slots(), v);
    return v;
}

std::string to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::FirstStep: return "first_step";
        case Violation::Kind::Step: return "step";
        case Violation::Kind::FinalPoint: return "final_point";
        case Violation::Kind::PeakPower: return "peak_power";
        case Violation::Kind::NegativePower: return "negative_power";
        case Violation::Kind::AveragePower: return "average_power";
    }
    return "unknown";
}

}  // namespace skyjam
