#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "coarsekit/constructions.hpp"
#include "coarsekit/json_io.hpp"

using namespace coarsekit;

namespace {

SubsetMask mask_of(std::size_t n, std::initializer_list<std::uint32_t> idx) {
    return SubsetMask::of(n, std::vector<std::uint32_t>(idx));
}

SubsetMask range_mask(std::size_t n, std::uint32_t lo, std::uint32_t hi) {
    SubsetMask m(n);
    for (std::uint32_t i = lo; i <= hi; ++i) m.set(i);
    return m;
}

FiniteTopology three_point_topology() {
    return FiniteTopology(3, {SubsetMask(3), mask_of(3, {0}), mask_of(3, {0, 1}),
                              mask_of(3, {0, 2}), SubsetMask::full(3)});
}

}  // namespace

TEST_CASE("metric_interpolate: midpoint set on the line") {
    auto p = SpacePresentation::metric_line(0, 10, 6, {1});
    const std::size_t n = p.window.size;
    auto v = metric_interpolate(p, range_mask(n, 0, 3), range_mask(n, 0, 7));
    CHECK(v == range_mask(n, 0, 5));   // 5: d to A = 2 <= 3 = d to {8,9,10}; 6: 3 > 2

    CHECK(metric_interpolate(p, range_mask(n, 0, 3), SubsetMask::full(n)) ==
          SubsetMask::full(n));        // d(x, ∅) = +inf
    CHECK(metric_interpolate(p, SubsetMask(n), range_mask(n, 0, 7)) == SubsetMask(n));

    CHECK_THROWS_AS(metric_interpolate(p, range_mask(n, 0, 5), range_mask(n, 0, 3)),
                    PreconditionError);
}

TEST_CASE("build_dyadic certifies a nested family on the metric line") {
    auto p = SpacePresentation::metric_line(0, 100, 30, {1, 2, 4, 8});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);
    auto fam = build_dyadic(op, mask_of(n, {0}), mask_of(n, {100}), 5, metric_witness(p));
    CHECK(fam.certified);
    REQUIRE(fam.sets.size() == 33);
    for (std::size_t k = 1; k < fam.sets.size(); ++k)
        CHECK(fam.sets[k - 1].subset_of(fam.sets[k]));
    // adjacent pairs hold under the operator (recheck independently)
    for (std::size_t k = 1; k < fam.sets.size(); ++k)
        CHECK(op.holds(fam.sets[k - 1], fam.sets[k]));
}

TEST_CASE("build_dyadic surfaces witness failure on a non-normal topology") {
    auto topo = three_point_topology();
    auto op = topological_operator(topo);
    // A = {b}, B = {c}: X∖B = {a,b} holds, but no intermediate set exists
    CHECK(op.holds(mask_of(3, {1}), mask_of(3, {0, 1})));
    CHECK_THROWS_AS(
        build_dyadic(op, mask_of(3, {1}), mask_of(3, {2}), 1, exhaustive_witness(op)),
        ConstructionError);
}

TEST_CASE("function_from_family reads off the minimum index") {
    const std::size_t n = 6;
    DyadicFamily fam;
    fam.depth = 1;
    fam.sets = {range_mask(n, 0, 1), range_mask(n, 0, 3), range_mask(n, 0, 4)};
    auto f = function_from_family(fam);
    CHECK(f.values == std::vector<double>{0, 0, 0.5, 0.5, 1, 1});

    DyadicFamily constant;
    constant.depth = 2;
    constant.sets.assign(5, SubsetMask::full(n));
    auto g = function_from_family(constant);
    for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("urysohn round-trip on the line: endpoints, monotonicity, continuity") {
    auto p = SpacePresentation::metric_line(0, 100, 30, {1, 2, 4, 8});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);
    auto a = range_mask(n, 0, 5), b = range_mask(n, 95, 100);
    auto result = urysohn(op, a, b, 6, metric_witness(p));

    a.for_each([&](std::size_t i) { CHECK(result.f.values[i] == 0.0); });
    b.for_each([&](std::size_t i) { CHECK(result.f.values[i] == 1.0); });
    for (std::size_t i = 1; i < n; ++i)
        CHECK(result.f.values[i] >= result.f.values[i - 1] - kTau);   // monotone along the line
    CHECK(result.continuity.pass);

    // the half-level preimage is an intermediate neighbourhood
    auto half = result.f.preimage_lt(0.5);
    CHECK(op.holds(a, half));
    CHECK(op.holds(half, b.complement()));
}

TEST_CASE("urysohn degenerate endpoint sets") {
    auto p = SpacePresentation::metric_line(0, 40, 12, {1, 2});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);

    auto empty_a = urysohn(op, SubsetMask(n), mask_of(n, {40}), 4, metric_witness(p));
    for (std::size_t i = 0; i < n; ++i) CHECK(empty_a.f.values[i] == 1.0);

    auto empty_b = urysohn(op, range_mask(n, 0, 3), SubsetMask(n), 4, metric_witness(p));
    range_mask(n, 0, 3).for_each([&](std::size_t i) { CHECK(empty_b.f.values[i] == 0.0); });
    for (std::size_t i = 0; i < n; ++i)
        CHECK(empty_b.f.values[i] <= std::pow(2.0, 1 - 4));   // vanishing off A at this depth
}

TEST_CASE("tietze: identity on full domain and exact constants") {
    auto p = SpacePresentation::metric_line(0, 40, 12, {1, 2});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);

    StepFunction f(n, 0, 0, 1);
    for (std::size_t i = 0; i < n; ++i) f.values[i] = (i % 5) / 5.0;
    auto full = tietze_extend(op, SubsetMask::full(n), f, 1e-6, metric_witness(p));
    CHECK(full.g.values == f.values);

    StepFunction c(n, 0.3, 0, 1);
    auto constant = tietze_extend(op, range_mask(n, 10, 20), c, 1e-6, metric_witness(p));
    for (double v : constant.g.values) CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("tietze two-block instance: contraction bound, tolerance, continuity") {
    auto p = SpacePresentation::metric_line(0, 60, 12, {1, 2, 4});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);
    auto a = range_mask(n, 0, 15) | range_mask(n, 45, 60);
    StepFunction f(n, 0, 0, 1);
    range_mask(n, 45, 60).for_each([&](std::size_t i) { f.values[i] = 1.0; });

    const double tol = 1e-4;
    auto result = tietze_extend(op, a, f, tol, metric_witness(p));

    REQUIRE(result.steps == result.residual_history.size());
    for (std::size_t k = 0; k < result.steps; ++k)
        CHECK(result.residual_history[k] <= result.contraction_bound[k] + kTau);
    CHECK(result.sup_error <= tol);
    double sup = 0;
    a.for_each([&](std::size_t i) {
        sup = std::max(sup, std::abs(result.g.values[i] - f.values[i]));
    });
    CHECK(sup <= tol);   // extension restricted to A returns f within tol
    CHECK(result.continuity.pass);
}

TEST_CASE("tietze rejects a restriction that is not induced-continuous") {
    auto p = SpacePresentation::metric_line(0, 60, 12, {1, 2, 4});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);
    auto a = range_mask(n, 0, 15) | range_mask(n, 45, 60);
    StepFunction parity(n, 0, 0, 1);
    a.for_each([&](std::size_t i) { parity.values[i] = double(i % 2); });
    CHECK_THROWS_AS(tietze_extend(op, a, parity, 1e-4, metric_witness(p)),
                    PreconditionError);
}

TEST_CASE("sum_functions: identities and preserved continuity") {
    auto p = SpacePresentation::metric_line(0, 80, 20, {1, 2, 4});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);

    auto r1 = urysohn(op, range_mask(n, 0, 4), range_mask(n, 76, 80), 5, metric_witness(p));
    StepFunction zero(n, 0, 0, 0);
    auto same = sum_functions(r1.f, zero);
    CHECK(same.values == r1.f.values);

    StepFunction neg(n, 0, -1, 0);
    for (std::size_t i = 0; i < n; ++i) neg.values[i] = -r1.f.values[i];
    auto cancel = sum_functions(r1.f, neg);
    for (double v : cancel.values) CHECK(v == doctest::Approx(0.0));
    CHECK(check_nbhd_continuous(op, cancel).pass);

    // the sum of two certified separating functions stays continuous
    auto r2 = urysohn(op, range_mask(n, 0, 10), range_mask(n, 70, 80), 5, metric_witness(p));
    auto s = sum_functions(r1.f, r2.f);
    CHECK(check_nbhd_continuous(op, s).pass);
}

TEST_CASE("serialization round-trips") {
    auto p = SpacePresentation::metric_line(0, 30, 10, {1, 2});
    const std::size_t n = p.window.size;
    auto op = hybrid_operator(p);
    auto result = urysohn(op, range_mask(n, 0, 2), range_mask(n, 28, 30), 3, metric_witness(p));

    auto j = dyadic_to_json(result.family);
    auto back = dyadic_from_json(j, n);
    REQUIRE(back.sets.size() == result.family.sets.size());
    for (std::size_t k = 0; k < back.sets.size(); ++k)
        CHECK(back.sets[k] == result.family.sets[k]);

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "coarsekit_test_io";
    fs::create_directories(dir);
    const std::string csv = (dir / "f.csv").string();
    write_function_csv(csv, result.f);
    auto loaded = load_function_file(csv, n);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(loaded.values[i] == result.f.values[i]);
    fs::remove_all(dir);
}
