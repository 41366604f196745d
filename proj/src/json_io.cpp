#include "coarsekit/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace coarsekit {

namespace {

std::vector<double> to_doubles(const json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

std::vector<std::vector<int>> grid_labels(const json& params) {
    std::vector<std::vector<int>> labels;
    if (params.contains("line")) {
        const int lo = params["line"][0], hi = params["line"][1];
        for (int x = lo; x <= hi; ++x) labels.push_back({x});
    } else if (params.contains("box")) {
        const auto& b = params["box"];
        for (int y = b[1][0].get<int>(); y <= b[1][1].get<int>(); ++y)
            for (int x = b[0][0].get<int>(); x <= b[0][1].get<int>(); ++x)
                labels.push_back({x, y});
    }
    return labels;
}

MetricType metric_from_string(const std::string& s) {
    if (s == "l1") return MetricType::L1;
    if (s == "l2") return MetricType::L2;
    if (s == "linf") return MetricType::Linf;
    throw std::invalid_argument("space file: unknown metric '" + s + "'");
}

}  // namespace

LoadedSpace load_space_json(const json& j) {
    LoadedSpace out;
    out.kind_string = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    std::vector<double> ladder = j.contains("ladder") ? to_doubles(j["ladder"])
                                                      : std::vector<double>{};

    if (out.kind_string == "Topology") {
        const std::size_t n = j.at("window").at("size").get<std::size_t>();
        std::vector<SubsetMask> opens;
        for (const auto& o : params.at("opens"))
            opens.push_back(SubsetMask::of(n, o.get<std::vector<std::uint32_t>>()));
        out.topology = std::make_unique<FiniteTopology>(n, std::move(opens));
        out.echo = {{"kind", "Topology"}, {"window", {{"size", n}}}};
        return out;
    }

    const double cutoff = j.at("cutoff").get<double>();
    auto labels = grid_labels(params);
    if (labels.empty() && j.contains("window") && j["window"].contains("labels"))
        for (const auto& l : j["window"]["labels"])
            labels.push_back(l.get<std::vector<int>>());

    SpacePresentation p;
    if (out.kind_string == "Metric") {
        p = SpacePresentation::metric_points(
            labels, cutoff, ladder,
            metric_from_string(params.value("metric", "l1")),
            params.value("resolution", 1.0));
    } else if (out.kind_string == "C0") {
        if (!params.contains("line"))
            throw std::invalid_argument("space file: C0 presentations use params.line");
        p = SpacePresentation::c0_line(params["line"][0], params["line"][1], cutoff, ladder);
    } else if (out.kind_string == "Group") {
        std::vector<std::array<int, 3>> gens;
        int dim = params.value("dim", 0);
        for (const auto& g : params.at("generators")) {
            std::array<int, 3> a{0, 0, 0};
            for (std::size_t d = 0; d < g.size(); ++d) a[d] = g[d].get<int>();
            dim = std::max(dim, static_cast<int>(g.size()));
            gens.push_back(a);
        }
        p = SpacePresentation::group(gens, dim, params.at("radius").get<int>(), cutoff, ladder);
    } else if (out.kind_string == "MaxULF") {
        p = SpacePresentation::max_ulf(j.at("window").at("size").get<std::size_t>(), cutoff,
                                       ladder);
    } else if (out.kind_string == "LSXA") {
        std::vector<std::array<int, 3>> excl;
        for (const auto& e : params.at("excluded")) {
            std::array<int, 3> a{0, 0, 0};
            for (std::size_t d = 0; d < e.size(); ++d) a[d] = e[d].get<int>();
            excl.push_back(a);
        }
        // Boundary points are carved out of the generated grid.
        std::vector<std::vector<int>> carrier;
        for (auto& l : labels) {
            bool is_excluded = false;
            for (const auto& e : excl) {
                bool same = true;
                for (std::size_t d = 0; d < l.size(); ++d)
                    if (l[d] != e[d]) { same = false; break; }
                if (same) { is_excluded = true; break; }
            }
            if (!is_excluded) carrier.push_back(l);
        }
        p = SpacePresentation::lsxa_grid(carrier, excl, params.value("resolution", 1.0),
                                         cutoff, ladder);
    } else if (out.kind_string == "HalfPlaneNonNormal") {
        std::vector<double> slopes = params.contains("slopes")
                                         ? to_doubles(params["slopes"])
                                         : std::vector<double>{0.5};
        p = SpacePresentation::half_plane_wedge(params.at("y_max").get<int>(), cutoff, ladder,
                                                slopes);
    } else {
        throw std::invalid_argument("space file: unknown kind '" + out.kind_string + "'");
    }

    if (j.contains("window") && j["window"].contains("size")) {
        const std::size_t declared = j["window"]["size"].get<std::size_t>();
        if (declared != p.window.size)
            throw std::invalid_argument("space file: declared window size " +
                                        std::to_string(declared) + " but presentation has " +
                                        std::to_string(p.window.size) + " points");
    }

    out.echo = {{"kind", out.kind_string},
                {"window", {{"size", p.window.size}, {"dim", p.window.dim}}},
                {"cutoff", p.cutoff},
                {"ladder", p.ladder_params},
                {"components", p.coarse_components().count}};
    out.space = std::make_unique<SpacePresentation>(std::move(p));
    return out;
}

LoadedSpace load_space_file(const std::string& path) {
    return load_space_json(load_json_file(path));
}

std::map<std::string, SubsetMask> load_subsets_file(const std::string& path,
                                                    const LoadedSpace& space) {
    const json j = load_json_file(path);
    const std::size_t n = space.space ? space.space->window.size
                                      : space.topology->universe();
    std::map<std::string, SubsetMask> out;
    for (const auto& [name, val] : j.items()) {
        if (val.is_array()) {
            out.emplace(name, SubsetMask::of(n, val.get<std::vector<std::uint32_t>>()));
        } else if (val.is_object() && val.contains("coords")) {
            if (!space.space)
                throw std::invalid_argument("subsets file: coords need a labeled presentation");
            SubsetMask m(n);
            for (const auto& c : val["coords"]) {
                std::array<int, 3> a{0, 0, 0};
                for (std::size_t d = 0; d < c.size(); ++d) a[d] = c[d].get<int>();
                auto idx = space.space->index_of_label(a);
                if (!idx)
                    throw std::invalid_argument("subsets file: coordinate not in the window");
                m.set(*idx);
            }
            out.emplace(name, std::move(m));
        } else {
            throw std::invalid_argument("subsets file: set '" + name +
                                        "' must be an index array or {\"coords\": [...]}");
        }
    }
    return out;
}

StepFunction load_function_file(const std::string& path, std::size_t window_size) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open function file " + path);
        std::vector<double> values(window_size, 0.0);
        std::vector<char> seen(window_size, 0);
        std::string line;
        double lo = 0, hi = 1;
        while (std::getline(in, line)) {
            if (line.empty() || line.rfind("point_index", 0) == 0) continue;
            std::istringstream ss(line);
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b)) continue;
            const std::size_t idx = std::stoul(a);
            if (idx >= window_size)
                throw std::invalid_argument("function file: index beyond window");
            values[idx] = std::stod(b);
            seen[idx] = 1;
        }
        for (char c : seen)
            if (!c) throw std::invalid_argument("function file: missing point values");
        for (double v : values) { lo = std::min(lo, v); hi = std::max(hi, v); }
        return StepFunction(std::move(values), std::min(0.0, lo), std::max(1.0, hi));
    }
    const json j = load_json_file(path);
    std::vector<double> values = to_doubles(j.at("values"));
    if (values.size() != window_size)
        throw std::invalid_argument("function file: value count does not match the window");
    double lo = 0, hi = 1;
    if (j.contains("range")) { lo = j["range"][0]; hi = j["range"][1]; }
    return StepFunction(std::move(values), lo, hi);
}

void write_function_csv(const std::string& path, const StepFunction& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "point_index,value\n";
    char buf[64];
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
        out << i << ',' << buf << '\n';
    }
}

void write_function_json(const std::string& path, const StepFunction& f, const json& config) {
    json j;
    j["range"] = {f.lo, f.hi};
    j["values"] = f.values;
    j["config"] = config;
    write_json_file(path, j);
}

json mask_to_json(const SubsetMask& m) {
    json j = json::array();
    m.for_each([&](std::size_t i) { j.push_back(i); });
    return j;
}

json dyadic_to_json(const DyadicFamily& fam) {
    const std::size_t den = std::size_t{1} << fam.depth;
    json sets = json::array();
    for (std::size_t k = 0; k < fam.sets.size(); ++k)
        sets.push_back(json::array({json::array({k, den}), mask_to_json(fam.sets[k])}));
    return {{"depth", fam.depth}, {"sets", sets}};
}

DyadicFamily dyadic_from_json(const json& j, std::size_t window_size) {
    DyadicFamily fam;
    fam.depth = j.at("depth").get<int>();
    const std::size_t den = std::size_t{1} << fam.depth;
    fam.sets.assign(den + 1, SubsetMask(window_size));
    for (const auto& entry : j.at("sets")) {
        const std::size_t num = entry[0][0].get<std::size_t>();
        const std::size_t d = entry[0][1].get<std::size_t>();
        if (d != den || num > den)
            throw std::invalid_argument("dyadic family: bad index");
        fam.sets[num] = SubsetMask::of(window_size,
                                       entry[1].get<std::vector<std::uint32_t>>());
    }
    return fam;
}

json axiom_verdict_to_json(const AxiomVerdict& v, const std::string& op_name) {
    json w = json::array();
    for (const auto& m : v.witness) w.push_back(mask_to_json(m));
    return {{"operator", op_name},
            {"axiom", to_string(v.axiom)},
            {"verdict", to_string(v.verdict)},
            {"witness", w},
            {"checked_pairs", v.checked},
            {"mode", v.mode},
            {"seed", v.seed},
            {"detail", v.detail}};
}

json continuity_to_json(const ContinuityVerdict& v) {
    return {{"verdict", v.pass ? "PASS" : "FAIL"},
            {"pairs_checked", v.pairs_checked},
            {"thresholds", v.threshold_count},
            {"failing_pair", v.pass ? json() : json{v.fail_a, v.fail_b}},
            {"detail", v.detail}};
}

json oscillation_to_json(const OscillationReport& r) {
    return {{"scale_index", r.scale_index},
            {"scale", r.scale_tag},
            {"epsilon", r.epsilon},
            {"verdict", r.pass ? "PASS" : "FAIL"},
            {"exception_set_size", r.exception_set.count()},
            {"exception_set", r.exception_set.count() <= 256 ? mask_to_json(r.exception_set)
                                                             : json("omitted (large)")},
            {"max_excess_diameter", r.max_excess_diameter},
            {"witness_member", r.witness_member}};
}

json separation_to_json(const SeparationReport& r) {
    json scales = json::array();
    for (const auto& s : r.scales)
        scales.push_back({{"scale_index", s.scale_index},
                          {"scale", s.scale_tag},
                          {"weakly_bounded", s.weakly_bounded},
                          {"intersection_size", s.intersection_size},
                          {"intersection_diameter", s.intersection_diameter}});
    return {{"verdict", r.pass ? "PASS" : "FAIL"}, {"scales", scales}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace coarsekit
