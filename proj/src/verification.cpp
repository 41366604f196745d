#include "coarsekit/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "coarsekit/core_sets.hpp"

namespace coarsekit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t pack3(const std::array<int, 3>& c) {
    constexpr std::int64_t offset = 1 << 20;
    return (c[0] + offset) | ((c[1] + offset) << 21) | ((c[2] + offset) << 42);
}
}  // namespace

std::vector<OscillationReport> check_slowly_oscillating(const SpacePresentation& p,
                                                        const StepFunction& f, double eps) {
    if (f.size() != p.window.size)
        throw std::invalid_argument("check_slowly_oscillating: window mismatch");
    std::vector<OscillationReport> out;
    out.reserve(p.ladder().size());
    for (std::size_t s = 0; s < p.ladder().size(); ++s) {
        const Family& scale = p.ladder()[s];
        OscillationReport rep;
        rep.scale_index = s;
        rep.scale_tag = scale.tag;
        rep.epsilon = eps;
        rep.exception_set = SubsetMask(p.window.size);
        for (const auto& member : scale.members) {
            const double d = f.image_diameter(member);
            if (d >= eps - kTau) {
                for (auto i : member) rep.exception_set.set(i);
                if (d > rep.max_excess_diameter) {
                    rep.max_excess_diameter = d;
                    rep.witness_member = member;
                }
            }
        }
        rep.pass = p.weakly_bounded(rep.exception_set);
        out.push_back(std::move(rep));
    }
    return out;
}

bool slowly_oscillating_verdict(const SpacePresentation& p, const StepFunction& f,
                                const std::vector<double>& eps_grid) {
    for (double eps : eps_grid)
        for (const auto& rep : check_slowly_oscillating(p, f, eps))
            if (!rep.pass) return false;
    return true;
}

SeparationReport check_coarsely_separated(const SpacePresentation& p, const SubsetMask& a,
                                          const SubsetMask& b,
                                          const std::vector<Family>& extra_scales) {
    SeparationReport rep;
    auto run = [&](const Family& scale, std::size_t index) {
        SeparationScale ss;
        ss.scale_index = index;
        ss.scale_tag = scale.tag;
        SubsetMask meet = star_set(a, scale) & star_set(b, scale);
        ss.intersection_size = meet.count();
        ss.intersection_diameter = p.has_metric() ? p.diameter(meet) : double(meet.count());
        ss.weakly_bounded = p.weakly_bounded(meet);
        rep.pass = rep.pass && ss.weakly_bounded;
        rep.scales.push_back(std::move(ss));
    };
    std::size_t idx = 0;
    for (const auto& scale : p.ladder()) run(scale, idx++);
    for (const auto& scale : extra_scales) run(scale, idx++);
    return rep;
}

std::vector<Family> lsxa_pair_probes(const SpacePresentation& p, const SubsetMask& b,
                                     const SubsetMask& c) {
    std::vector<Family> probes;
    if (p.kind != SpaceKind::Lsxa) return probes;
    for (std::size_t ai = 0; ai < p.excluded.size(); ++ai) {
        // Rank points of each set by distance to this boundary point and pair
        // them off; a certified pair family witnesses common accumulation.
        auto ranked = [&](const SubsetMask& s) {
            std::vector<std::pair<double, std::uint32_t>> v;
            s.for_each([&](std::size_t i) {
                auto lbl = p.label_of(i);
                double d = 0;
                for (int k = 0; k < p.window.dim; ++k)
                    d += std::abs(lbl[k] - p.excluded[ai][k]);
                v.emplace_back(d * p.resolution, static_cast<std::uint32_t>(i));
            });
            std::sort(v.begin(), v.end());
            return v;
        };
        auto rb = ranked(b), rc = ranked(c);
        Family fam(p.window.size, "boundary-pairs-" + std::to_string(ai));
        for (std::size_t k = 0; k < std::min(rb.size(), rc.size()); ++k)
            fam.add(std::vector<std::uint32_t>{rb[k].second, rc[k].second});
        std::string why;
        if (fam.size() > 0 && p.is_scale(fam, &why)) probes.push_back(std::move(fam));
    }
    return probes;
}

WitnessFamilyResult nonnormal_witness(const SpacePresentation& p, const StepFunction& f,
                                      int m_hint, double delta) {
    if (p.kind != SpaceKind::HalfPlaneNonNormal)
        throw PreconditionError("nonnormal_witness: wedge presentation required");
    if (f.size() != p.window.size)
        throw PreconditionError("nonnormal_witness: window mismatch");

    bool separates = true;
    p.wedge_a().for_each([&](std::size_t i) {
        if (f.values[i] > delta + kTau) separates = false;
    });
    if (!separates)
        throw PreconditionError("nonnormal_witness: candidate does not send the first diagonal "
                                "into [0, delta]");
    p.wedge_b().for_each([&](std::size_t i) {
        if (f.values[i] < 1 - delta - kTau) separates = false;
    });
    if (!separates)
        throw PreconditionError("nonnormal_witness: candidate does not send the second diagonal "
                                "into [1-delta, 1]");

    // Same-row unit-distance oscillation must die off away from the apex.
    const auto apex = std::array<int, 3>{1, 1, 0};
    int m = m_hint;
    bool metric_so = true;
    for (std::uint32_t i = 0; i < p.window.size; ++i) {
        auto c = p.label_of(i);
        auto right = p.index_of_label({c[0] + 1, c[1], 0});
        if (!right) continue;
        if (std::abs(f.values[i] - f.values[*right]) >= 1.0 / 6 - kTau) {
            const int d = std::abs(c[0] - apex[0]) + std::abs(c[1] - apex[1]) + 1;
            m = std::max(m, d);
            if (c[1] > p.y_max - 3) metric_so = false;
        }
    }
    if (!metric_so || m + 3 > p.y_max)
        throw PreconditionError(
            "nonnormal_witness: candidate is not metrically slowly oscillating at the window");

    WitnessFamilyResult out;
    out.m_threshold = m;
    out.family = Family(p.window.size, "nonnormal-witness");
    out.min_gap = 1.0;
    for (int y = m + 3; y <= p.y_max; ++y) {
        std::optional<std::uint32_t> z, w;
        for (int x = -y; x <= y; ++x) {
            auto idx = p.index_of_label({x, y, 0});
            if (!idx) continue;
            const double v = f.values[*idx];
            if (!z && v >= 1.0 / 6 - kTau && v <= 1.0 / 3 + kTau) z = idx;
            if (!w && v >= 2.0 / 3 - kTau && v <= 5.0 / 6 + kTau) w = idx;
        }
        if (!z || !w)
            throw ConstructionError(
                "nonnormal_witness: row " + std::to_string(y) +
                " beyond M has no band point; the candidate is not metrically slowly "
                "oscillating at the window");
        const double gap = std::abs(f.values[*z] - f.values[*w]);
        out.rows.push_back({y, *z, *w, gap});
        out.min_gap = std::min(out.min_gap, gap);
        out.family.add(std::vector<std::uint32_t>{std::min(*z, *w), std::max(*z, *w)});
    }
    out.rows_covered = out.rows.size();
    out.certified = p.is_scale(out.family, &out.certification_detail);
    return out;
}

GroupNbhdVerdict group_coarse_nbhd(const SpacePresentation& p, const SubsetMask& u,
                                   const SubsetMask& n,
                                   const std::vector<std::uint32_t>& sample_x) {
    if (p.kind != SpaceKind::Group)
        throw PreconditionError("group_coarse_nbhd: group presentation required");
    GroupNbhdVerdict out;

    // D = U·V·V as coordinate offsets (V = generators plus identity).
    std::vector<std::array<int, 3>> v = p.generators;
    v.push_back({0, 0, 0});
    std::unordered_set<std::int64_t> seen;
    std::vector<std::array<int, 3>> d;
    u.for_each([&](std::size_t ui) {
        auto c = p.label_of(ui);
        for (const auto& v1 : v)
            for (const auto& v2 : v) {
                std::array<int, 3> e{c[0] + v1[0] + v2[0], c[1] + v1[1] + v2[1],
                                     c[2] + v1[2] + v2[2]};
                if (seen.insert(pack3(e)).second) d.push_back(e);
            }
    });

    std::vector<std::uint32_t> xs = sample_x;
    if (xs.empty())
        for (std::uint32_t i = 0; i < p.window.size; ++i) xs.push_back(i);

    for (auto x : xs) {
        ++out.checked_points;
        auto cx = p.label_of(x);
        SubsetMask escape(p.window.size);
        for (const auto& e : d) {
            auto idx = p.index_of_label({e[0] + cx[0], e[1] + cx[1], e[2] + cx[2]});
            if (idx && !n.test(*idx)) escape.set(*idx);
        }
        if (!p.is_bounded(escape)) {
            out.pass = false;
            out.failing_points.push_back(x);
        }
    }

    NbhdOperator coarse = coarse_operator(p);
    out.coarse_verdict = u.subset_of(n) && coarse.holds(u, n);
    out.agrees = out.pass == out.coarse_verdict;
    return out;
}

CnVerdict cn_membership(const SpacePresentation& p, const Family& u,
                        const std::vector<CnProbe>& probes) {
    CnVerdict out;
    NbhdOperator coarse = coarse_operator(p);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& probe = probes[k];
        if (!coarse.holds(probe.a, probe.n))
            throw PreconditionError("cn_membership: probe " + std::to_string(k) +
                                    " is not a coarse neighbourhood pair");
        ++out.probes_checked;
        SubsetMask excess = star_set(probe.a, u) - probe.n;
        if (!p.is_bounded(excess)) {
            out.pass = false;
            out.failing_probe = k;
            out.detail = "unbounded excess against probe " +
                         (probe.tag.empty() ? std::to_string(k) : probe.tag);
            return out;
        }
    }
    return out;
}

namespace {

struct SpreadPick { double diam; std::uint32_t a, b; };

// Greedy sparsification: keep picks whose far endpoints stay outside every
// selected half-diameter ball, so the probe's witnesses survive.
std::optional<CnProbe> probe_from_picks(const SpacePresentation& p,
                                        std::vector<SpreadPick> picks, std::string tag) {
    if (picks.size() < 3) return std::nullopt;
    std::sort(picks.begin(), picks.end(), [](const SpreadPick& x, const SpreadPick& y) {
        return x.diam != y.diam ? x.diam < y.diam : x.a < y.a;
    });
    std::vector<SpreadPick> chosen;
    for (const auto& pk : picks) {
        const double r = std::max(p.resolution, std::floor(pk.diam / 2));
        bool ok = true;
        for (const auto& prev : chosen) {
            const double r_prev = std::max(p.resolution, std::floor(prev.diam / 2));
            if (p.distance(pk.b, prev.a) <= r_prev + kTau ||
                p.distance(prev.b, pk.a) <= r + kTau ||
                p.distance(pk.b, pk.a) <= r + kTau) { ok = false; break; }
        }
        if (ok && p.distance(pk.b, pk.a) > r + kTau) chosen.push_back(pk);
    }
    if (chosen.size() < 3) return std::nullopt;
    CnProbe probe;
    probe.a = SubsetMask(p.window.size);
    probe.n = SubsetMask(p.window.size);
    for (const auto& pk : chosen) {
        probe.a.set(pk.a);
        probe.n |= p.ball(pk.a, std::max(p.resolution, std::floor(pk.diam / 2)));
    }
    probe.tag = std::move(tag);
    return probe;
}

}  // namespace

std::optional<CnProbe> cn_auto_probe(const SpacePresentation& p, const Family& u) {
    if (!p.has_metric()) return std::nullopt;
    std::vector<SpreadPick> picks;
    for (const auto& member : u.members) {
        if (member.size() < 2) continue;
        SpreadPick best{0, member[0], member[0]};
        for (std::size_t i = 0; i < member.size(); ++i)
            for (std::size_t j = i + 1; j < member.size(); ++j) {
                const double d = p.distance(member[i], member[j]);
                if (d > best.diam) best = {d, member[i], member[j]};
            }
        if (best.diam > p.resolution + kTau) picks.push_back(best);
    }
    return probe_from_picks(p, std::move(picks), "half-diameter-balls");
}

std::vector<CnProbe> cn_exhaustive_probes(const SpacePresentation& p, std::size_t max_window) {
    std::vector<CnProbe> out;
    if (p.window.size > max_window) return out;
    NbhdOperator coarse = coarse_operator(p);
    const std::uint32_t count = 1u << p.window.size;
    for (std::uint32_t a = 0; a < count; ++a) {
        SubsetMask am(p.window.size);
        for (std::size_t i = 0; i < p.window.size; ++i)
            if ((a >> i) & 1) am.set(i);
        for (std::uint32_t n = a; n < count; ++n) {
            if ((a & n) != a) continue;   // A must lie inside N
            SubsetMask nm(p.window.size);
            for (std::size_t i = 0; i < p.window.size; ++i)
                if ((n >> i) & 1) nm.set(i);
            if (coarse.holds(am, nm)) out.push_back({am, nm, ""});
        }
    }
    return out;
}

LsContinuityVerdict check_ls_continuity(const SpacePresentation& px, const SpacePresentation& py,
                                        const std::vector<std::uint32_t>& point_map,
                                        const std::vector<CnProbe>& probes) {
    if (point_map.size() != px.window.size)
        throw PreconditionError("check_ls_continuity: map size mismatch");
    for (auto y : point_map)
        if (y >= py.window.size)
            throw PreconditionError("check_ls_continuity: map value beyond codomain window");

    auto image = [&](const SubsetMask& s) {
        SubsetMask out(py.window.size);
        s.for_each([&](std::size_t i) { out.set(point_map[i]); });
        return out;
    };
    auto preimage = [&](const SubsetMask& s) {
        SubsetMask out(px.window.size);
        for (std::size_t i = 0; i < point_map.size(); ++i)
            if (s.test(point_map[i])) out.set(i);
        return out;
    };

    // Windowed properness and bounded-to-bounded gates, on the coarsest scales.
    if (!py.ladder().empty()) {
        const Family& top = py.ladder().back();
        for (const auto& member : top.members)
            if (!px.weakly_bounded(preimage(SubsetMask::of(py.window.size, member))))
                throw PreconditionError("check_ls_continuity: map is not proper at the window");
    }
    if (!px.ladder().empty()) {
        const Family& top = px.ladder().back();
        for (const auto& member : top.members)
            if (!py.weakly_bounded(image(SubsetMask::of(px.window.size, member))))
                throw PreconditionError(
                    "check_ls_continuity: map does not send bounded sets to bounded sets");
    }

    LsContinuityVerdict out;
    for (const auto& scale : px.ladder()) {
        Family pushed(py.window.size, "pushforward(" + scale.tag + ")");
        for (const auto& member : scale.members)
            pushed.add(image(SubsetMask::of(px.window.size, member)));
        if (!py.is_scale(pushed)) { out.direct_pass = false; break; }
    }

    NbhdOperator coarse_x = coarse_operator(px);
    NbhdOperator coarse_y = coarse_operator(py);
    for (const auto& probe : probes) {
        if (!coarse_y.holds(probe.a, probe.n))
            throw PreconditionError("check_ls_continuity: probe is not a coarse neighbourhood "
                                    "pair in the codomain");
        ++out.probes_checked;
        if (!coarse_x.holds(preimage(probe.a), preimage(probe.n))) {
            out.preimage_pass = false;
            out.detail = "preimage fails probe " + probe.tag;
            break;
        }
    }
    out.agree = out.direct_pass == out.preimage_pass;
    return out;
}

std::optional<CnProbe> ls_auto_probe(const SpacePresentation& px, const SpacePresentation& py,
                                     const std::vector<std::uint32_t>& point_map) {
    if (px.ladder().empty() || !py.has_metric()) return std::nullopt;
    const Family& fine = px.ladder().front();
    std::vector<SpreadPick> picks;
    for (const auto& member : fine.members) {
        SpreadPick best{0, 0, 0};
        for (std::size_t i = 0; i < member.size(); ++i)
            for (std::size_t j = i + 1; j < member.size(); ++j) {
                const double d = py.distance(point_map[member[i]], point_map[member[j]]);
                if (d > best.diam)
                    best = {d, point_map[member[i]], point_map[member[j]]};
            }
        if (best.diam > py.resolution + kTau) picks.push_back(best);
    }
    return probe_from_picks(py, std::move(picks), "image-spread-balls");
}

}  // namespace coarsekit
