#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "coarsekit/json_io.hpp"

using namespace coarsekit;
namespace fs = std::filesystem;

namespace {

std::string gallery(const std::string& name) {
    return std::string(CK_GALLERY_DIR) + "/" + name;
}

struct MuteCout {
    std::ostringstream sink;
    std::streambuf* saved;
    MuteCout() : saved(std::cout.rdbuf(sink.rdbuf())) {}
    ~MuteCout() { std::cout.rdbuf(saved); }
};

int run(cli::RunConfig cfg, const char* out_name) {
    static const fs::path scratch = fs::temp_directory_path() / "coarsekit_cli_tests";
    cfg.out_dir = (scratch / out_name).string();
    MuteCout mute;
    return cli::run_command(cfg);
}

}  // namespace

TEST_CASE("cli exit protocol: 0 pass, 1 verdict fail, 2 input, 3 construction") {
    cli::RunConfig ok;
    ok.command = "separate";
    ok.space_file = gallery("metric_z_line_201.json");
    ok.subsets_file = gallery("subsets_line_201.json");
    CHECK(run(ok, "sep_ok") == 0);

    // A = B: the star intersection contains A at every scale
    const auto scratch = fs::temp_directory_path() / "coarsekit_cli_tests";
    fs::create_directories(scratch);
    {
        std::ofstream out(scratch / "same_sets.json");
        out << "{\"A\": [0, 50, 100, 150, 200], \"B\": [0, 50, 100, 150, 200]}\n";
    }
    cli::RunConfig fail = ok;
    fail.subsets_file = (scratch / "same_sets.json").string();
    CHECK(run(fail, "sep_fail") == 1);

    cli::RunConfig missing = ok;
    missing.space_file = gallery("no_such_space.json");
    CHECK(run(missing, "missing") == 2);

    // the three-point model admits no intermediate set: witness FAIL
    cli::RunConfig nonnormal_topo;
    nonnormal_topo.command = "urysohn";
    nonnormal_topo.space_file = gallery("finite_nonnormal_topology.json");
    nonnormal_topo.subsets_file = gallery("subsets_three_point.json");
    nonnormal_topo.depth = 1;
    CHECK(run(nonnormal_topo, "urysohn_n4fail") == 3);

    // axioms on the same model: N4 FAIL drives exit 1
    cli::RunConfig axioms;
    axioms.command = "axioms";
    axioms.space_file = gallery("finite_nonnormal_topology.json");
    CHECK(run(axioms, "axioms_topo") == 1);

    // non-separating candidate for the wedge: contract violation, exit 2
    cli::RunConfig nn;
    nn.command = "nonnormal";
    nn.space_file = gallery("halfplane_wedge_60.json");
    nn.function_file = gallery("parity_f_201.json");   // wrong window size
    CHECK(run(nn, "nn_bad") == 2);
}

TEST_CASE("cli urysohn writes f.csv, f.json and a certified report") {
    cli::RunConfig cfg;
    cfg.command = "urysohn";
    cfg.space_file = gallery("metric_z_line_201.json");
    cfg.subsets_file = gallery("subsets_line_201.json");
    cfg.depth = 6;
    CHECK(run(cfg, "urysohn_ok") == 0);

    const auto dir = fs::temp_directory_path() / "coarsekit_cli_tests" / "urysohn_ok";
    CHECK(fs::exists(dir / "f.csv"));
    CHECK(fs::exists(dir / "f.json"));
    auto report = load_json_file((dir / "urysohn_report.json").string());
    CHECK(report["certified"] == true);
    CHECK(report["continuity"]["verdict"] == "PASS");
    CHECK(report["config"]["procedure_ref"] == "urysohn.dyadic-family");
    CHECK(report["config"]["space"]["cutoff"] == 30.0);

    auto f = load_function_file((dir / "f.csv").string(), 201);
    CHECK(f.values[0] == 0.0);
    CHECK(f.values[200] == 1.0);
}

TEST_CASE("cli soscheck reports per-scale, per-eps verdicts") {
    cli::RunConfig cfg;
    cfg.command = "soscheck";
    cfg.space_file = gallery("metric_z_line_201.json");
    cfg.function_file = gallery("parity_f_201.json");
    cfg.eps_grid = {0.5, 0.25};
    CHECK(run(cfg, "sos_parity") == 1);

    const auto dir = fs::temp_directory_path() / "coarsekit_cli_tests" / "sos_parity";
    auto report = load_json_file((dir / "oscillation_report.json").string());
    CHECK(report["verdict"] == "FAIL");
    CHECK(report["reports"].size() == 8);   // 2 eps x 4 ladder scales
}
