#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "skyjam/driver.hpp"
#include "skyjam/model.hpp"
#include "skyjam/objective.hpp"

namespace skyjam {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

nlohmann::json to_json(const Scenario& s);
nlohmann::json to_json(const Solution& sol);
nlohmann::json to_json(const SecrecyReport& r);
nlohmann::json to_json(const TraceRecord& r);

/// Header `slot,x_m,y_m,p_s_w,p_u_w`, slots numbered from 1.
void write_trajectory_csv(std::ostream& os, const Solution& sol);

}  // namespace skyjam
