#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace skyjam {

using Vec2 = Eigen::Vector2d;

/// Raised when a scenario document is missing a key or describes an
/// impossible instance. `field()` names the offending key.
class ScenarioError : public std::invalid_argument {
public:
    ScenarioError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Unit conversions. Everything inside the library is linear (watts, linear
// gains); dB and dBm appear only at the config and report boundary.
double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Relative tolerance used by every feasibility check.
inline constexpr double kFeasTol = 1e-9;

/// Immutable problem instance: ground nodes, UAV kinematics, power budgets and
/// channel constants. Build through `Scenario::make` or `build_scenario`.
class Scenario {
public:
    struct Params {
        Vec2 w_s{0.0, 0.0};
        Vec2 w_d{0.0, 0.0};
        Vec2 w_e{0.0, 0.0};
        Vec2 q0{0.0, 0.0};
        Vec2 qf{0.0, 0.0};
        double altitude_h = 0.0;
        double v_max = 0.0;
        double period_t = 0.0;
        std::size_t n_slots = 0;
        double gamma0 = 0.0;        // linear, noise-normalized reference gain
        double pathloss_exp = 3.0;
        double p_s_avg = 0.0;       // watts
        double p_s_peak = 0.0;
        double p_u_avg = 0.0;
        double p_u_peak = 0.0;
        double epsilon = 1e-4;
    };

    /// Validates and freezes `p`. Throws ScenarioError naming the bad field.
    static Scenario make(const Params& p);

    const Params& params() const noexcept { return p_; }

    const Vec2& w_s() const noexcept { return p_.w_s; }
    const Vec2& w_d() const noexcept { return p_.w_d; }
    const Vec2& w_e() const noexcept { return p_.w_e; }
    const Vec2& q0() const noexcept { return p_.q0; }
    const Vec2& qf() const noexcept { return p_.qf; }
    double altitude() const noexcept { return p_.altitude_h; }
    double h2() const noexcept { return p_.altitude_h * p_.altitude_h; }
    double v_max() const noexcept { return p_.v_max; }
    double period() const noexcept { return p_.period_t; }
    std::size_t n_slots() const noexcept { return p_.n_slots; }
    double gamma0() const noexcept { return p_.gamma0; }
    double pathloss_exp() const noexcept { return p_.pathloss_exp; }
    double p_s_avg() const noexcept { return p_.p_s_avg; }
    double p_s_peak() const noexcept { return p_.p_s_peak; }
    double p_u_avg() const noexcept { return p_.p_u_avg; }
    double p_u_peak() const noexcept { return p_.p_u_peak; }
    double epsilon() const noexcept { return p_.epsilon; }

    /// Slot length T/N.
    double slot_len() const noexcept { return slot_len_; }
    /// Largest horizontal displacement per slot, V * slot_len.
    double step_bound() const noexcept { return step_bound_; }

    /// Ground S->D and S->E distances.
    double d_sd() const noexcept { return d_sd_; }
    double d_se() const noexcept { return d_se_; }

    /// Mean noise-normalized ground gains gamma0 * d^-phi.
    double g_d_mean() const noexcept { return g_d_mean_; }
    double g_e_mean() const noexcept { return g_e_mean_; }

    /// True when the straight line q0 -> qf at full speed is the only
    /// feasible trajectory.
    bool is_min_time() const noexcept;

    /// Same instance with a different period; the slot length is kept and the
    /// slot count recomputed.
    Scenario with_period(double period_t) const;

private:
    explicit Scenario(const Params& p);

    Params p_;
    double slot_len_ = 0.0;
    double step_bound_ = 0.0;
    double d_sd_ = 0.0;
    double d_se_ = 0.0;
    double g_d_mean_ = 0.0;
    double g_e_mean_ = 0.0;
};

/// Builds a Scenario from a flat JSON document (see data/scenario_default.json).
/// Slot discretization is given by `dt` (seconds) or `N`; neither means dt = 1 s.
Scenario build_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Horizontal UAV waypoints q[1..N]; q[N] must equal qf.
struct Trajectory {
    std::vector<Vec2> q;

    std::size_t size() const noexcept { return q.size(); }
    const Vec2& operator[](std::size_t n) const { return q[n]; }
    Vec2& operator[](std::size_t n) { return q[n]; }
};

struct PowerSchedule {
    std::vector<double> p_s;
    std::vector<double> p_u;
};

/// Per-slot analytic rate bounds (R_D lower bound, R_E upper bound).
using SlotRates = std::vector<std::pair<double, double>>;

/// Output of any scheme: the optimized variables, the surrogate value they
/// achieve, and the objective after each outer iteration.
struct Solution {
    Trajectory trajectory;
    PowerSchedule schedule;
    double objective = 0.0;  // bps/Hz, mean of per-slot bound differences
    SlotRates per_slot_rates;
    std::vector<double> trace;
    bool converged = false;
};

/// Uniformly spaced waypoints from q0 to qf.
Trajectory straight_line(const Scenario& s);

/// One violated constraint. `index` is the slot (0-based) the constraint
/// belongs to; `magnitude` is how far past the bound it is, in the
/// constraint's own units.
struct Violation {
    enum class Kind {
        FirstStep,   // |q[1] - q0| <= L
        Step,        // |q[n+1] - q[n]| <= L
        FinalPoint,  // q[N] == qf
        PeakPower,
        NegativePower,
        AveragePower,
    };
    Kind kind;
    std::size_t index;
    double magnitude;
    char terminal = ' ';  // 'S' or 'U' for power violations
};

struct Verdict {
    std::vector<Violation> violations;

    bool feasible() const noexcept { return violations.empty(); }
    double worst() const noexcept;
};

/// Mobility constraints. Throws std::invalid_argument on length mismatch.
Verdict check_trajectory(const Scenario& s, const Trajectory& t);
/// Average and peak power constraints for both transmitters.
Verdict check_schedule(const Scenario& s, const PowerSchedule& p);

std::string to_string(Violation::Kind k);

}  // namespace skyjam
