#pragma once

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "coarsekit/constructions.hpp"
#include "coarsekit/operators.hpp"
#include "coarsekit/step_function.hpp"
#include "coarsekit/topology.hpp"
#include "coarsekit/verification.hpp"

namespace coarsekit {

using nlohmann::json;

/// A space file: either a presentation or an explicit finite topology table.
/// Held behind pointers so operators can keep stable references.
struct LoadedSpace {
    std::unique_ptr<SpacePresentation> space;
    std::unique_ptr<FiniteTopology> topology;
    std::string kind_string;
    json echo;   // normalized configuration, embedded into reports
};

LoadedSpace load_space_json(const json& j);
LoadedSpace load_space_file(const std::string& path);

std::map<std::string, SubsetMask> load_subsets_file(const std::string& path,
                                                    const LoadedSpace& space);

StepFunction load_function_file(const std::string& path, std::size_t window_size);
void write_function_csv(const std::string& path, const StepFunction& f);
void write_function_json(const std::string& path, const StepFunction& f, const json& config);

json mask_to_json(const SubsetMask& m);
/// Ordered (rational index, subset) pairs; exact dyadic indices as [num, den].
json dyadic_to_json(const DyadicFamily& fam);
DyadicFamily dyadic_from_json(const json& j, std::size_t window_size);
json axiom_verdict_to_json(const AxiomVerdict& v, const std::string& op_name);
json continuity_to_json(const ContinuityVerdict& v);
json oscillation_to_json(const OscillationReport& r);
json separation_to_json(const SeparationReport& r);

void write_json_file(const std::string& path, const json& j);
json load_json_file(const std::string& path);

}  // namespace coarsekit
