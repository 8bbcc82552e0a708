#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "skyjam/driver.hpp"
#include "skyjam/model.hpp"

namespace skyjam {

enum class SchemeId { JTP, TNP, LTP, NJ };

inline constexpr std::array<SchemeId, 4> kAllSchemes{SchemeId::JTP, SchemeId::TNP, SchemeId::LTP,
                                                     SchemeId::NJ};

std::string to_string(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

/// Best-effort two-segment path: fly at full speed toward the point above E,
/// hover there as long as the remaining time allows, then fly at full speed
/// to qf arriving in the last slot. When E is out of reach the turn happens
/// at the farthest point on the q0 -> E segment from which qf can still be
/// reached, and the UAV flies the two segments without hovering.
Trajectory build_ltp_trajectory(const Scenario& s);

/// Average powers, trajectory optimized by repeated convexified steps.
Solution run_tnp(const Scenario& s, const BcdConfig& cfg);
/// Fixed best-effort trajectory, source and jamming powers alternated.
Solution run_ltp(const Scenario& s, const BcdConfig& cfg);
/// No jamming; only the source power is optimized. The trajectory is the
/// straight line and carries no meaning.
Solution run_nj(const Scenario& s);

Solution run_scheme(const Scenario& s, SchemeId id, const BcdConfig& cfg);

}  // namespace skyjam
