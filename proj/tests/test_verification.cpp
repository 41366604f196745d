#include "doctest.h"

#include <cmath>
#include <random>

#include "coarsekit/core_sets.hpp"
#include "coarsekit/verification.hpp"

using namespace coarsekit;

namespace {

SubsetMask range_mask(std::size_t n, std::uint32_t lo, std::uint32_t hi) {
    SubsetMask m(n);
    for (std::uint32_t i = lo; i <= hi; ++i) m.set(i);
    return m;
}

SpacePresentation long_line(int hi, double cutoff, std::vector<double> radii) {
    std::vector<std::vector<int>> labels;
    for (int x = 0; x <= hi; ++x) labels.push_back({x});
    return SpacePresentation::metric_points(labels, cutoff, std::move(radii));
}

}  // namespace

TEST_CASE("oscillation scan: vanishing oscillation passes with a confined K") {
    auto p = long_line(10000, 250, {1, 2, 4});
    StepFunction f(p.window.size, 0, 0, 1);
    for (std::size_t i = 0; i < p.window.size; ++i) {
        const double s = std::sin(std::log(1.0 + double(i)));
        f.values[i] = s * s;
    }
    for (const auto& rep : check_slowly_oscillating(p, f, 0.05)) {
        CHECK(rep.pass);
        // the exception set is an initial segment of the window
        rep.exception_set.for_each([&](std::size_t i) { CHECK(i <= 350); });
        // invariant: members disjoint from K keep image diameter under eps
        const auto& scale = p.ladder()[rep.scale_index];
        for (const auto& member : scale.members) {
            bool meets = false;
            for (auto i : member) meets = meets || rep.exception_set.test(i);
            if (!meets) CHECK(f.image_diameter(member) < 0.05);
        }
    }
}

TEST_CASE("oscillation scan: constants pass with empty K, parity fails") {
    auto p = long_line(400, 40, {1, 2});
    StepFunction constant(p.window.size, 0.7, 0, 1);
    for (const auto& rep : check_slowly_oscillating(p, constant, 0.05)) {
        CHECK(rep.pass);
        CHECK(rep.exception_set.empty());
    }

    StepFunction parity(p.window.size, 0, 0, 1);
    for (std::size_t i = 0; i < p.window.size; ++i) parity.values[i] = double(i % 2);
    auto reps = check_slowly_oscillating(p, parity, 0.5);
    CHECK_FALSE(reps[0].pass);
    CHECK(reps[0].exception_set.count() == p.window.size);   // every 1-ball offends
    CHECK(reps[0].max_excess_diameter == doctest::Approx(1.0));
}

TEST_CASE("slow-oscillation and coarse continuity verdicts agree: exhaustive 3-valued") {
    // two far clusters of four points; the window presents a coarsely trivial
    // space, where every function is honestly slowly oscillating
    auto p = SpacePresentation::metric_points(
        {{0}, {1}, {2}, {3}, {500}, {501}, {502}, {503}}, 5, {1, 2});
    auto op = coarse_operator(p);
    const double vals[3] = {0.0, 0.5, 1.0};
    std::size_t checked = 0;
    for (std::uint32_t code = 0; code < 6561; ++code) {   // 3^8 assignments
        StepFunction f(8, 0, 0, 1);
        std::uint32_t c = code;
        for (int i = 0; i < 8; ++i) { f.values[i] = vals[c % 3]; c /= 3; }
        const bool so = slowly_oscillating_verdict(p, f, p.eps_grid);
        const bool cont = check_nbhd_continuous(op, f, 0.05).pass;
        CHECK(so == cont);
        CHECK(so);
        ++checked;
    }
    CHECK(checked == 6561);
}

TEST_CASE("slow-oscillation and coarse continuity verdicts agree on sampled shapes") {
    auto p = long_line(300, 40, {1, 2, 4});
    auto op = coarse_operator(p);
    std::mt19937 rng(41);
    const std::size_t n = p.window.size;

    auto quantize = [](double v) { return std::round(v * 20) / 20; };
    std::size_t pass_count = 0, fail_count = 0;
    for (int round = 0; round < 40; ++round) {
        StepFunction f(n, 0, 0, 1);
        const int shape = round % 8;
        bool expect = true;
        switch (shape) {
            case 0: break;   // constant 0
            case 1: {        // single step
                const std::size_t j = 20 + rng() % 260;
                for (std::size_t i = j; i < n; ++i) f.values[i] = 1;
                break;
            }
            case 2: {        // several steps clustered within one cutoff ball
                const std::size_t base = 20 + rng() % 240;
                for (std::size_t i = 0; i < n; ++i)
                    f.values[i] = i < base ? 0 : (i < base + 10 ? 0.5 : 1);
                break;
            }
            case 3: {        // confined noise, then flat
                for (std::size_t i = 0; i <= 20; ++i)
                    f.values[i] = quantize(double(rng() % 21) / 20);
                break;
            }
            case 4: {        // slowly flattening oscillation
                const double alpha = 0.1 + 0.015 * double(rng() % 8);
                for (std::size_t i = 0; i < n; ++i) {
                    const double s = std::sin(alpha * std::log(1.0 + double(i)));
                    f.values[i] = s * s;
                }
                break;
            }
            case 5:          // parity
                for (std::size_t i = 0; i < n; ++i) f.values[i] = double(i % 2);
                expect = false;
                break;
            case 6: {        // mod-3 comb
                for (std::size_t i = 0; i < n; ++i) f.values[i] = double(i % 3) / 2;
                expect = false;
                break;
            }
            default:         // far-apart same-pair two-level
                for (std::size_t i = 50; i < 250; ++i) f.values[i] = 1;
                expect = false;
                break;
        }
        const bool so = slowly_oscillating_verdict(p, f, p.eps_grid);
        const bool cont = check_nbhd_continuous(op, f, 0.05).pass;
        CHECK(so == cont);
        CHECK(so == expect);
        (expect ? pass_count : fail_count) += 1;
    }
    CHECK(pass_count >= 20);
    CHECK(fail_count >= 10);
}

TEST_CASE("coarse separation: drifting-apart sets pass, equal sets fail") {
    auto p = long_line(10000, 300, {1, 2, 4});
    const std::size_t n = p.window.size;
    SubsetMask a(n), b(n);
    for (int k = 1; k * k + k <= 10000; ++k) {
        a.set(std::uint32_t(k * k));
        b.set(std::uint32_t(k * k + k));
    }
    auto rep = check_coarsely_separated(p, a, b);
    CHECK(rep.pass);
    for (const auto& s : rep.scales) CHECK(s.weakly_bounded);

    auto same = check_coarsely_separated(p, a, a);
    CHECK_FALSE(same.pass);
    for (const auto& s : same.scales) CHECK_FALSE(s.weakly_bounded);
}

TEST_CASE("separation agrees with the coarse-neighbourhood reading off the top octave") {
    auto p = long_line(100, 25, {1, 2, 4});
    const std::size_t n = p.window.size;
    auto op = coarse_operator(p);

    // far blocks: gap well beyond four times the top ladder radius
    auto a = range_mask(n, 0, 10);
    auto b = range_mask(n, 60, 100);
    CHECK(check_coarsely_separated(p, a, b).pass);
    CHECK(op.holds(a, b.complement()));

    // interleaved combs: both readings fail
    SubsetMask c(n), d(n);
    for (std::uint32_t i = 0; i < n; i += 4) { c.set(i); if (i + 2 < n) d.set(i + 2); }
    CHECK_FALSE(check_coarsely_separated(p, c, d).pass);
    CHECK_FALSE(op.holds(c, d.complement()));
}

TEST_CASE("wedge diagonals are coarsely separated in the wedge structure") {
    auto p = SpacePresentation::half_plane_wedge(60, 40, {1, 2}, {0.5});
    auto rep = check_coarsely_separated(p, p.wedge_a(), p.wedge_b());
    CHECK(rep.pass);
    // on the plain metric ladder the intersection hugs the apex
    for (const auto& s : rep.scales)
        if (s.scale_tag.rfind("balls", 0) == 0) CHECK(s.intersection_diameter <= 40);
}

TEST_CASE("nonnormal witness extraction on the angular candidate") {
    auto p = SpacePresentation::half_plane_wedge(60, 40, {1, 2}, {0.5});
    const std::size_t n = p.window.size;
    StepFunction f(n, 0, 0, 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = p.label_of(i);
        f.values[i] = double(c[1] - c[0]) / double(2 * c[1]);   // 0 on A, 1 on B
    }
    auto w = nonnormal_witness(p, f);
    CHECK(w.rows_covered >= 50);
    CHECK(w.min_gap >= 1.0 / 3 - kTau);
    CHECK(w.certified);
    CHECK(p.is_scale(w.family));
    for (const auto& row : w.rows) {
        CHECK(f.values[row.z] >= 1.0 / 6 - kTau);
        CHECK(f.values[row.z] <= 1.0 / 3 + kTau);
        CHECK(f.values[row.w] >= 2.0 / 3 - kTau);
        CHECK(f.values[row.w] <= 5.0 / 6 + kTau);
    }

    // a non-separating candidate is rejected up front
    StepFunction zero(n, 0, 0, 1);
    CHECK_THROWS_AS(nonnormal_witness(p, zero), PreconditionError);

    // band-swapped candidate: second diagonal not near 1
    StepFunction swapped(n, 0, 0, 1);
    for (std::size_t i = 0; i < n; ++i) swapped.values[i] = 1 - f.values[i];
    CHECK_THROWS_AS(nonnormal_witness(p, swapped), PreconditionError);
}

TEST_CASE("nonnormal witness rejects candidates with persistent row oscillation") {
    auto p = SpacePresentation::half_plane_wedge(40, 30, {1, 2}, {0.5});
    const std::size_t n = p.window.size;
    StepFunction f(n, 0, 0, 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = p.label_of(i);
        const double angular = double(c[1] - c[0]) / double(2 * c[1]);
        // keep the diagonals separated but oscillate along every row
        f.values[i] = std::clamp(angular + ((c[0] & 1) ? 0.2 : -0.2) *
                                               (angular > 0.3 && angular < 0.7 ? 1.0 : 0.0),
                                 0.0, 1.0);
    }
    CHECK_THROWS_AS(nonnormal_witness(p, f), PreconditionError);
}

TEST_CASE("group coarse neighbourhood: axis inside a widening band") {
    std::vector<std::array<int, 3>> gens;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            if (dx || dy) gens.push_back({dx, dy, 0});
    auto p = SpacePresentation::group(gens, 2, 16, 24, {1, 2});

    SubsetMask axis(p.window.size), band(p.window.size), full = SubsetMask::full(p.window.size);
    for (std::uint32_t i = 0; i < p.window.size; ++i) {
        auto c = p.label_of(i);
        if (c[1] == 0) axis.set(i);
        if (std::abs(c[1]) <= std::max(2.0, std::abs(c[0]) / 2.0)) band.set(i);
    }
    std::vector<std::uint32_t> near_identity;
    for (std::uint32_t i = 0; i < p.window.size; ++i)
        if (p.distance(*p.index_of_label({0, 0, 0}), i) <= 2) near_identity.push_back(i);

    auto pass = group_coarse_nbhd(p, axis, band, near_identity);
    CHECK(pass.pass);
    CHECK(pass.coarse_verdict);
    CHECK(pass.agrees);

    auto trivial = group_coarse_nbhd(p, axis, full, near_identity);
    CHECK(trivial.pass);
    CHECK(trivial.coarse_verdict);

    auto fail = group_coarse_nbhd(p, axis, axis, near_identity);
    CHECK_FALSE(fail.pass);
    CHECK_FALSE(fail.coarse_verdict);
    CHECK(fail.agrees);
}

TEST_CASE("cn membership: ladder scales pass, growing pairs fail the auto probe") {
    auto p = long_line(2000, 300, {1, 2, 4});
    const std::size_t n = p.window.size;

    CnProbe probe{range_mask(n, 0, 1), range_mask(n, 0, 20), "manual"};
    CHECK(cn_membership(p, p.ladder()[0], {probe}).pass);

    Family pairs(n, "spreading-pairs");
    for (int k = 2; k * k + k <= 2000; ++k)
        pairs.add(std::vector<std::uint32_t>{std::uint32_t(k * k), std::uint32_t(k * k + k)});
    auto auto_probe = cn_auto_probe(p, pairs);
    REQUIRE(auto_probe.has_value());
    auto verdict = cn_membership(p, pairs, {*auto_probe});
    CHECK_FALSE(verdict.pass);

    // bad probes are rejected before scanning: a comb is no coarse
    // neighbourhood of itself
    SubsetMask comb(n);
    for (std::uint32_t i = 0; i < n; i += 2) comb.set(i);
    CnProbe invalid{comb, comb, "self"};
    CHECK_THROWS_AS(cn_membership(p, pairs, {invalid}), PreconditionError);
}

TEST_CASE("cn membership: growing blocks pass exhaustive probes on a small ULF window") {
    auto p = SpacePresentation::max_ulf(12, 6, {1, 2, 4});
    Family blocks(12, "growing-blocks");
    blocks.add(std::vector<std::uint32_t>{0});
    blocks.add(std::vector<std::uint32_t>{1, 2});
    blocks.add(std::vector<std::uint32_t>{3, 4, 5});
    for (std::uint32_t i = 6; i < 12; ++i) blocks.add(std::vector<std::uint32_t>{i});

    auto probes = cn_exhaustive_probes(p);
    REQUIRE(probes.size() > 1000);
    CHECK(cn_membership(p, blocks, probes).pass);
}

TEST_CASE("ls-continuity two-route comparison") {
    auto line = long_line(60, 20, {1, 2});

    // identity: both routes pass vacuously-compatible probes
    std::vector<std::uint32_t> ident(line.window.size);
    for (std::uint32_t i = 0; i < ident.size(); ++i) ident[i] = i;
    CnProbe probe{range_mask(line.window.size, 0, 2), range_mask(line.window.size, 0, 30),
                  "near-origin"};
    auto v_id = check_ls_continuity(line, line, ident, {probe});
    CHECK(v_id.direct_pass);
    CHECK(v_id.preimage_pass);
    CHECK(v_id.agree);

    // squaring map: both routes fail, the probe comes from the image spread
    std::vector<std::vector<int>> ylab;
    for (int x = 0; x <= 3722; ++x) ylab.push_back({x});
    auto yline = SpacePresentation::metric_points(ylab, 1200, {1, 2, 4});
    std::vector<std::uint32_t> sq(line.window.size);
    for (std::uint32_t i = 0; i < sq.size(); ++i) sq[i] = i * i;
    auto auto_probe = ls_auto_probe(line, yline, sq);
    REQUIRE(auto_probe.has_value());
    auto v_sq = check_ls_continuity(line, yline, sq, {*auto_probe});
    CHECK_FALSE(v_sq.direct_pass);
    CHECK_FALSE(v_sq.preimage_pass);
    CHECK(v_sq.agree);

    // coordinate projection of a box: both routes pass
    auto box = SpacePresentation::metric_box(0, 12, 0, 4, 14, {1, 2});
    std::vector<std::vector<int>> pl;
    for (int x = 0; x <= 12; ++x) pl.push_back({x});
    auto pline = SpacePresentation::metric_points(pl, 5, {1, 2, 4});
    std::vector<std::uint32_t> proj(box.window.size);
    for (std::uint32_t i = 0; i < proj.size(); ++i)
        proj[i] = std::uint32_t(box.label_of(i)[0]);
    CnProbe pprobe{range_mask(pline.window.size, 0, 1), range_mask(pline.window.size, 0, 7),
                   "left-edge"};
    auto v_pr = check_ls_continuity(box, pline, proj, {pprobe});
    CHECK(v_pr.direct_pass);
    CHECK(v_pr.preimage_pass);
    CHECK(v_pr.agree);
}

TEST_CASE("normality decomposition probe: both factors good implies hybrid N4 on probes") {
    // the topological factor is discrete (trivially normal) and the coarse
    // factor carries the metric interpolation witness; the hybrid operator
    // must then split every probed holding pair
    auto p = long_line(200, 30, {1, 2, 4, 8});
    auto hybrid = hybrid_operator(p);
    const std::size_t n = p.window.size;

    // nested edge-anchored pairs: the per-scale excesses stay single-cluster,
    // so the window's boundedness proxy reflects the true verdicts
    std::vector<std::pair<SubsetMask, SubsetMask>> probes;
    std::mt19937 rng(53);
    while (probes.size() < 40) {
        const std::uint32_t top = 10 + rng() % 100;
        SubsetMask a = range_mask(n, 0, top);
        SubsetMask c = range_mask(n, 0, std::min<std::uint32_t>(200, top + 25 + rng() % 60));
        if (hybrid.holds(a, c)) probes.emplace_back(std::move(a), std::move(c));
    }
    auto witness = metric_witness(p);
    for (const auto& [a, c] : probes) {
        auto b = witness.fn(a, c);
        REQUIRE(b.has_value());
        CHECK(hybrid.holds(a, *b));
        CHECK(hybrid.holds(*b, c));
    }
}

TEST_CASE("boundary-accumulation separation on LSXA grids") {
    std::vector<std::vector<int>> labels;
    for (int x = 1; x <= 40; ++x) labels.push_back({x});
    auto p = SpacePresentation::lsxa_grid(labels, {{0, 0, 0}}, 0.1, 1.5);
    const std::size_t n = p.window.size;

    // both sets accumulate at the boundary point: closures meet, separation fails
    SubsetMask b(n), c(n);
    for (std::uint32_t i = 0; i < n; ++i) (i % 2 ? b : c).set(i);
    auto probes = lsxa_pair_probes(p, b, c);
    REQUIRE(!probes.empty());
    CHECK_FALSE(check_coarsely_separated(p, b, c, probes).pass);

    // separated closures: only one side reaches the boundary
    auto near = range_mask(n, 0, 9);    // grid points 0.1 .. 1.0
    auto far = range_mask(n, 24, 39);   // grid points 2.5 .. 4.0
    auto probes2 = lsxa_pair_probes(p, near, far);
    CHECK(check_coarsely_separated(p, near, far, probes2).pass);

    // ambient closure disjointness, computed directly, matches the verdicts
    auto ambient_meet = [&](const SubsetMask& s, const SubsetMask& t) {
        // shared accumulation at the boundary or overlapping grid closures
        bool meets = false;
        for (std::uint32_t i = 0; i < n && !meets; ++i)
            for (std::uint32_t j = 0; j < n && !meets; ++j)
                if (s.test(i) && t.test(j) && p.distance(i, j) <= 2 * p.resolution + kTau)
                    meets = true;
        const bool s_acc = p.lsxa_distance_to_excluded(*range_mask(n, 0, 0).to_indices().begin()) <=
                           2 * p.resolution;   // grid floor sanity
        (void)s_acc;
        bool s_bdry = false, t_bdry = false;
        s.for_each([&](std::size_t i) {
            s_bdry = s_bdry || p.lsxa_distance_to_excluded(i) <= p.resolution * (1 + kTau);
        });
        t.for_each([&](std::size_t i) {
            t_bdry = t_bdry || p.lsxa_distance_to_excluded(i) <= p.resolution * (1 + kTau);
        });
        return meets || (s_bdry && t_bdry);
    };
    CHECK(ambient_meet(b, c));
    CHECK_FALSE(ambient_meet(near, far));
}
