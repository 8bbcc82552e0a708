#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "skyjam/model.hpp"

namespace skyjam {

/// A subproblem solver failed inside an outer iteration.
class SolverError : public std::runtime_error {
public:
    SolverError(std::size_t iteration, const std::string& what)
        : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
          iteration_(iteration) {}
    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

struct TraceRecord {
    std::size_t iteration;
    double objective;
    double wall_time_s;  // since the start of the run
};

enum class InitTrajectory { StraightLine, BestEffortLtp };
enum class InitPower { UniformAverage };

struct BcdConfig {
    double epsilon = 1e-4;
    std::size_t max_iters = 200;
    InitTrajectory init_trajectory_mode = InitTrajectory::BestEffortLtp;
    InitPower init_power_mode = InitPower::UniformAverage;
    /// Convexify-and-solve steps per block per outer iteration.
    std::size_t sca_inner_steps = 1;
    /// Receives one record per completed outer iteration.
    std::function<void(const TraceRecord&)> trace_sink;

    /// Default config with epsilon taken from the scenario.
    static BcdConfig from(const Scenario& s) {
        BcdConfig c;
        c.epsilon = s.epsilon();
        return c;
    }
    void validate() const;
};

/// Initial trajectory and powers selected by `cfg`.
Trajectory initial_trajectory(const Scenario& s, const BcdConfig& cfg);
PowerSchedule initial_schedule(const Scenario& s, const BcdConfig& cfg);

/// (obj - prev) / max(|prev|, 1e-12) < epsilon
bool converged_by_fraction(double prev, double obj, double epsilon);

/// Joint trajectory and power optimization. Each outer iteration updates the
/// source powers (exactly), then the jamming powers and the trajectory (one
/// convexified step each), and records the surrogate objective. A block
/// update that would lower the objective through rounding is discarded, so
/// the trace is non-decreasing. Stops on the fractional-increase rule or
/// after max_iters (then `converged` is false).
Solution bcd_optimize(const Scenario& s, const BcdConfig& cfg);

}  // namespace skyjam
