#include "cli.hpp"

#include <filesystem>
#include <iostream>

#include "coarsekit/constructions.hpp"
#include "coarsekit/json_io.hpp"

namespace coarsekit::cli {

namespace {

namespace fs = std::filesystem;

json base_config(const RunConfig& cfg, const LoadedSpace& space, const char* procedure_ref) {
    json j;
    j["space"] = space.echo;
    j["seed"] = cfg.seed.value_or(CheckBudget{}.seed);
    j["procedure_ref"] = procedure_ref;
    if (cfg.depth) j["depth"] = *cfg.depth;
    if (cfg.tol) j["tol"] = *cfg.tol;
    if (cfg.grid_step) j["grid_step"] = *cfg.grid_step;
    if (!cfg.eps_grid.empty()) j["eps_grid"] = cfg.eps_grid;
    return j;
}

const SubsetMask& require_subset(const std::map<std::string, SubsetMask>& sets,
                                 const std::string& name) {
    auto it = sets.find(name);
    if (it == sets.end())
        throw std::invalid_argument("subsets file: missing required set '" + name + "'");
    return it->second;
}

N4Witness pick_witness(const LoadedSpace& space, const NbhdOperator& op) {
    if (space.space && space.space->has_metric()) return metric_witness(*space.space);
    return exhaustive_witness(op);
}

int cmd_axioms(const RunConfig& cfg, const LoadedSpace& space) {
    std::vector<std::pair<std::string, NbhdOperator>> operators;
    if (space.topology) {
        operators.emplace_back("topological", topological_operator(*space.topology));
    } else {
        operators.emplace_back("topological", topological_operator(*space.space));
        operators.emplace_back("coarse", coarse_operator(*space.space));
        operators.emplace_back("hybrid", hybrid_operator(*space.space));
    }
    if (!cfg.ops.empty()) {
        std::erase_if(operators, [&](const auto& entry) {
            return std::find(cfg.ops.begin(), cfg.ops.end(), entry.first) == cfg.ops.end();
        });
    }

    CheckBudget budget;
    if (cfg.seed) budget.seed = *cfg.seed;
    const json config = base_config(cfg, space, "neighbourhood-axioms.N0-N4");

    bool any_fail = false;
    json summary = json::array();
    for (const auto& [name, op] : operators) {
        for (Axiom ax : {Axiom::N0, Axiom::N1, Axiom::N2, Axiom::N3, Axiom::N4}) {
            AxiomVerdict v;
            if (ax == Axiom::N4 && space.space && space.space->has_metric())
                v = check_axiom_n4_witnessed(op, metric_witness(*space.space).fn, budget);
            else
                v = check_axiom(op, ax, budget);
            json out = axiom_verdict_to_json(v, name);
            out["config"] = config;
            write_json_file(cfg.out_dir + "/verdict_" + name + "_" + to_string(ax) + ".json",
                            out);
            std::cout << name << ' ' << to_string(ax) << ": " << to_string(v.verdict) << '\n';
            summary.push_back({{"operator", name},
                               {"axiom", to_string(ax)},
                               {"verdict", to_string(v.verdict)}});
            any_fail = any_fail || v.verdict == VerdictKind::Fail;
        }
    }
    write_json_file(cfg.out_dir + "/axioms_summary.json",
                    {{"config", config}, {"results", summary}});
    return any_fail ? 1 : 0;
}

int cmd_urysohn(const RunConfig& cfg, const LoadedSpace& space) {
    auto sets = load_subsets_file(cfg.subsets_file, space);
    const SubsetMask& a = require_subset(sets, "A");
    const SubsetMask& b = require_subset(sets, "B");
    NbhdOperator op = space.topology ? topological_operator(*space.topology)
                                     : hybrid_operator(*space.space);
    const int depth = cfg.depth.value_or(6);
    const double grid = cfg.grid_step.value_or(1.0 / 32);
    auto result = urysohn(op, a, b, depth, pick_witness(space, op), grid);

    const json config = base_config(cfg, space, "urysohn.dyadic-family");
    write_function_csv(cfg.out_dir + "/f.csv", result.f);
    write_function_json(cfg.out_dir + "/f.json", result.f, config);
    json fam = json::array();
    for (std::size_t k = 0; k < result.family.sets.size(); ++k)
        fam.push_back({{"index", result.family.index_value(k)},
                       {"set_size", result.family.sets[k].count()}});
    write_json_file(cfg.out_dir + "/urysohn_report.json",
                    {{"config", config},
                     {"depth", depth},
                     {"certified", result.family.certified},
                     {"family", fam},
                     {"continuity", continuity_to_json(result.continuity)}});
    std::cout << "urysohn: continuity " << (result.continuity.pass ? "PASS" : "FAIL") << '\n';
    return result.continuity.pass ? 0 : 1;
}

int cmd_tietze(const RunConfig& cfg, const LoadedSpace& space) {
    if (!space.space) throw std::invalid_argument("tietze: needs a space presentation");
    auto sets = load_subsets_file(cfg.subsets_file, space);
    const SubsetMask& a = require_subset(sets, "A");
    StepFunction f = load_function_file(cfg.function_file, space.space->window.size);
    NbhdOperator op = hybrid_operator(*space.space);
    const double tol = cfg.tol.value_or(1e-6);
    const int depth = cfg.depth.value_or(6);
    const double grid = cfg.grid_step.value_or(1.0 / 32);
    auto result = tietze_extend(op, a, f, tol, pick_witness(space, op), depth, grid);

    double sup = 0;
    a.for_each([&](std::size_t i) {
        sup = std::max(sup, std::abs(result.g.values[i] - f.values[i]));
    });

    const json config = base_config(cfg, space, "tietze.iterated-midpoint-extension");
    write_function_csv(cfg.out_dir + "/g.csv", result.g);
    write_function_json(cfg.out_dir + "/g.json", result.g, config);
    write_json_file(cfg.out_dir + "/tietze_report.json",
                    {{"config", config},
                     {"steps", result.steps},
                     {"sup_error_on_A", sup},
                     {"residual_history", result.residual_history},
                     {"contraction_bound", result.contraction_bound},
                     {"geometric_envelope", result.geometric_envelope},
                     {"continuity", continuity_to_json(result.continuity)}});
    const bool ok = result.continuity.pass && sup <= tol + kTau;
    std::cout << "tietze: " << result.steps << " steps, sup error " << sup << ", continuity "
              << (result.continuity.pass ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

int cmd_separate(const RunConfig& cfg, const LoadedSpace& space) {
    if (!space.space) throw std::invalid_argument("separate: needs a space presentation");
    auto sets = load_subsets_file(cfg.subsets_file, space);
    const SubsetMask& a = require_subset(sets, "A");
    const SubsetMask& b = require_subset(sets, "B");
    std::vector<Family> extra;
    if (space.space->kind == SpaceKind::Lsxa)
        extra = lsxa_pair_probes(*space.space, a, b);
    auto rep = check_coarsely_separated(*space.space, a, b, extra);
    json out = separation_to_json(rep);
    out["config"] = base_config(cfg, space, "coarse-separation.star-intersection-scan");
    write_json_file(cfg.out_dir + "/separation_report.json", out);
    std::cout << "separate: " << (rep.pass ? "PASS" : "FAIL") << '\n';
    return rep.pass ? 0 : 1;
}

int cmd_soscheck(const RunConfig& cfg, const LoadedSpace& space) {
    if (!space.space) throw std::invalid_argument("soscheck: needs a space presentation");
    StepFunction f = load_function_file(cfg.function_file, space.space->window.size);
    const std::vector<double> grid =
        cfg.eps_grid.empty() ? space.space->eps_grid : cfg.eps_grid;
    bool pass = true;
    json reports = json::array();
    for (double eps : grid)
        for (const auto& rep : check_slowly_oscillating(*space.space, f, eps)) {
            reports.push_back(oscillation_to_json(rep));
            pass = pass && rep.pass;
        }
    json out;
    out["config"] = base_config(cfg, space, "slow-oscillation.scale-scan");
    out["eps_grid"] = grid;
    out["verdict"] = pass ? "PASS" : "FAIL";
    out["reports"] = reports;
    write_json_file(cfg.out_dir + "/oscillation_report.json", out);
    std::cout << "soscheck: " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

int cmd_nonnormal(const RunConfig& cfg, const LoadedSpace& space) {
    if (!space.space) throw std::invalid_argument("nonnormal: needs a space presentation");
    StepFunction f = load_function_file(cfg.function_file, space.space->window.size);
    auto result = nonnormal_witness(*space.space, f, cfg.m_hint.value_or(0),
                                    cfg.delta.value_or(1.0 / 6));
    json rows = json::array();
    for (const auto& r : result.rows)
        rows.push_back({{"row", r.y}, {"z", r.z}, {"w", r.w}, {"gap", r.gap}});
    json members = json::array();
    for (const auto& m : result.family.members) members.push_back(m);
    const json config = base_config(cfg, space, "nonnormal-wedge.witness-extraction");
    write_json_file(cfg.out_dir + "/witness_family.json",
                    {{"config", config}, {"members", members}});
    write_json_file(cfg.out_dir + "/nonnormal_report.json",
                    {{"config", config},
                     {"m_threshold", result.m_threshold},
                     {"rows_covered", result.rows_covered},
                     {"min_gap", result.min_gap},
                     {"certified_in_structure", result.certified},
                     {"certification_detail", result.certification_detail},
                     {"rows", rows}});
    std::cout << "nonnormal: " << result.rows_covered << " rows, min gap " << result.min_gap
              << ", family " << (result.certified ? "certified" : "NOT certified") << '\n';
    return result.certified && result.min_gap >= 1.0 / 3 - kTau ? 0 : 1;
}

}  // namespace

int run_command(const RunConfig& cfg) {
    try {
        if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
        LoadedSpace space = load_space_file(cfg.space_file);
        if (cfg.command == "axioms") return cmd_axioms(cfg, space);
        if (cfg.command == "urysohn") return cmd_urysohn(cfg, space);
        if (cfg.command == "tietze") return cmd_tietze(cfg, space);
        if (cfg.command == "separate") return cmd_separate(cfg, space);
        if (cfg.command == "soscheck") return cmd_soscheck(cfg, space);
        if (cfg.command == "nonnormal") return cmd_nonnormal(cfg, space);
        std::cerr << "unknown command: " << cfg.command << '\n';
        return 2;
    } catch (const ConstructionError& e) {
        std::cerr << "construction failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {   // includes PreconditionError
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace coarsekit::cli
