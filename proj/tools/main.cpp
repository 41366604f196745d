#include "CLI11.hpp"

#include "cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coarsekit — windowed large-scale geometry checks and constructions"};
    app.require_subcommand(1);

    coarsekit::cli::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--space", cfg.space_file, "space presentation JSON")->required();
        sub->add_option("--out", cfg.out_dir, "output directory")->required();
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { cfg.seed = s; }, "random seed for sampled checks");
    };

    auto* axioms = app.add_subcommand("axioms", "check N0-N4 for each operator kind");
    add_common(axioms);
    axioms->add_option("--ops", cfg.ops, "operator filter (topological/coarse/hybrid)");

    auto* ury = app.add_subcommand("urysohn", "separating function for a holding pair");
    add_common(ury);
    ury->add_option("--subsets", cfg.subsets_file, "subsets JSON with sets A and B")->required();
    ury->add_option_function<int>("--depth", [&](int d) { cfg.depth = d; }, "dyadic depth");
    ury->add_option_function<double>("--grid-step", [&](double g) { cfg.grid_step = g; },
                                     "continuity threshold grid step");

    auto* tz = app.add_subcommand("tietze", "extend a function from a subset to the window");
    add_common(tz);
    tz->add_option("--subsets", cfg.subsets_file, "subsets JSON with set A")->required();
    tz->add_option("--function", cfg.function_file, "function file (CSV or JSON)")->required();
    tz->add_option_function<double>("--tol", [&](double t) { cfg.tol = t; }, "target tolerance");
    tz->add_option_function<int>("--depth", [&](int d) { cfg.depth = d; }, "dyadic depth");
    tz->add_option_function<double>("--grid-step", [&](double g) { cfg.grid_step = g; },
                                    "continuity threshold grid step");

    auto* sep = app.add_subcommand("separate", "coarse-separation scan for two subsets");
    add_common(sep);
    sep->add_option("--subsets", cfg.subsets_file, "subsets JSON with sets A and B")->required();

    auto* sos = app.add_subcommand("soscheck", "slow-oscillation scan for a function");
    add_common(sos);
    sos->add_option("--function", cfg.function_file, "function file (CSV or JSON)")->required();
    sos->add_option("--eps-grid", cfg.eps_grid, "epsilon grid");

    auto* nn = app.add_subcommand("nonnormal", "oscillation-witness extraction on the wedge");
    add_common(nn);
    nn->add_option("--function", cfg.function_file, "separating candidate (CSV or JSON)")
        ->required();
    nn->add_option_function<double>("--delta", [&](double d) { cfg.delta = d; },
                                    "diagonal band width");
    nn->add_option_function<int>("--m-hint", [&](int m) { cfg.m_hint = m; },
                                 "starting row threshold");

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    return coarsekit::cli::run_command(cfg);
}
