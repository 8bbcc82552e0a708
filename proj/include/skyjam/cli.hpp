#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "skyjam/baselines.hpp"

namespace skyjam {

struct RunManifest {
    std::string scenario_path;
    std::vector<SchemeId> schemes;
    std::vector<double> periods;
    std::uint64_t mc_samples = 10000;
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string version;
};

/// Batch front end. Exit status: 0 success, 1 solver or I/O failure, 2 bad
/// flags (usage printed to `err`, nothing written).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version_string();

}  // namespace skyjam
