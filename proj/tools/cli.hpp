#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coarsekit::cli {

struct RunConfig {
    std::string command;
    std::string space_file;
    std::string subsets_file;
    std::string function_file;
    std::string out_dir = ".";
    std::optional<int> depth;
    std::optional<double> tol;
    std::optional<double> grid_step;
    std::optional<double> delta;
    std::optional<int> m_hint;
    std::vector<double> eps_grid;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> ops;   // axiom operator filter
};

/// Exit protocol: 0 all PASS or INCONCLUSIVE, 1 verdict FAIL, 2 input error,
/// 3 construction failure (e.g. interpolation witness FAIL).
int run_command(const RunConfig& config);

}  // namespace coarsekit::cli
