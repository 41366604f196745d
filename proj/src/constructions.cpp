#include "coarsekit/constructions.hpp"

#include <cmath>
#include <limits>

#include "coarsekit/core_sets.hpp"

namespace coarsekit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SubsetMask metric_interpolate(const SpacePresentation& p, const SubsetMask& a,
                              const SubsetMask& u, bool check_pre) {
    if (!p.has_metric()) throw PreconditionError("metric_interpolate: kind lacks a metric");
    if (a.empty()) return SubsetMask(p.window.size);
    if (!a.subset_of(u)) throw PreconditionError("metric_interpolate: A must lie inside U");
    if (check_pre) {
        for (const auto& scale : p.ladder()) {
            SubsetMask excess = star_set(a, scale) - u;
            if (!p.weakly_bounded(excess))
                throw PreconditionError(
                    "metric_interpolate: U is not a neighbourhood of A at scale " + scale.tag);
        }
    }
    const SubsetMask outside = u.complement();
    SubsetMask v(p.window.size);
    for (std::size_t x = 0; x < p.window.size; ++x) {
        const double da = p.distance_to(x, a);
        const double dout = outside.empty() ? kInf : p.distance_to(x, outside);
        if (da <= dout + kTau) v.set(x);
    }
    return v;
}

N4Witness metric_witness(const SpacePresentation& p) {
    return {[&p](const SubsetMask& a, const SubsetMask& c) -> std::optional<SubsetMask> {
                return metric_interpolate(p, a, c, false);
            },
            "metric-midpoint"};
}

N4Witness exhaustive_witness(const NbhdOperator& op, std::uint64_t budget) {
    NbhdOperator parent = op;
    return {[parent, budget](const SubsetMask& a, const SubsetMask& c) -> std::optional<SubsetMask> {
                const std::size_t n = parent.universe;
                if (n >= 63 || (std::uint64_t{1} << n) > budget) return std::nullopt;
                const std::uint64_t total = std::uint64_t{1} << n;
                for (std::uint64_t bits = 0; bits < total; ++bits) {
                    SubsetMask b(n);
                    for (std::size_t i = 0; i < n; ++i)
                        if ((bits >> i) & 1) b.set(i);
                    if (parent.holds(a, b) && parent.holds(b, c)) return b;
                }
                return std::nullopt;
            },
            "exhaustive-search"};
}

DyadicFamily build_dyadic(const NbhdOperator& op, const SubsetMask& a, const SubsetMask& b,
                          int depth, const N4Witness& witness) {
    if (depth < 0 || depth > 20) throw PreconditionError("build_dyadic: depth out of range");
    const SubsetMask top = b.complement();
    if (!op.holds(a, top))
        throw PreconditionError("build_dyadic: X∖B is not a neighbourhood of A");

    DyadicFamily fam;
    fam.depth = depth;
    const std::size_t last = std::size_t{1} << depth;
    fam.sets.assign(last + 1, SubsetMask(a.universe()));
    fam.sets[0] = a;
    fam.sets[last] = top;

    for (int level = 1; level <= depth; ++level) {
        const std::size_t step = last >> level;
        for (std::size_t k = step; k < last; k += 2 * step) {
            auto mid = witness.fn(fam.sets[k - step], fam.sets[k + step]);
            if (!mid)
                throw ConstructionError(
                    "build_dyadic: witness " + witness.name + " failed between indices " +
                    std::to_string(fam.index_value(k - step)) + " and " +
                    std::to_string(fam.index_value(k + step)));
            fam.sets[k] = std::move(*mid);
        }
    }
    for (std::size_t k = 0; k < last; ++k) {
        if (!op.holds(fam.sets[k], fam.sets[k + 1]))
            throw ConstructionError(
                "build_dyadic: certification failed at adjacent pair (" +
                std::to_string(fam.index_value(k)) + ", " +
                std::to_string(fam.index_value(k + 1)) + ")");
        if (!fam.sets[k].subset_of(fam.sets[k + 1]))
            throw ConstructionError("build_dyadic: nestedness violated");
    }
    fam.certified = true;
    return fam;
}

StepFunction function_from_family(const DyadicFamily& fam) {
    const std::size_t n = fam.sets.front().universe();
    StepFunction f(n, 1.0, 0.0, 1.0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t k = 0; k < fam.sets.size(); ++k)
            if (fam.sets[k].test(x)) { f.values[x] = fam.index_value(k); break; }
    return f;
}

UrysohnResult urysohn(const NbhdOperator& op, const SubsetMask& a, const SubsetMask& b,
                      int depth, const N4Witness& witness, double grid_step) {
    UrysohnResult out;
    out.family = build_dyadic(op, a, b, depth, witness);
    out.f = function_from_family(out.family);
    a.for_each([&](std::size_t i) {
        if (out.f.values[i] != 0.0) throw ConstructionError("urysohn: f(A) != {0}");
    });
    b.for_each([&](std::size_t i) {
        if (out.f.values[i] != 1.0) throw ConstructionError("urysohn: f(B) != {1}");
    });
    out.continuity = check_nbhd_continuous(op, out.f, grid_step);
    return out;
}

TietzeResult tietze_extend(const NbhdOperator& op, const SubsetMask& a, const StepFunction& f,
                           double tol, const N4Witness& witness, int depth, double grid_step,
                           bool check_pre) {
    if (tol <= 0) throw PreconditionError("tietze_extend: tolerance must be positive");
    if (a.empty()) throw PreconditionError("tietze_extend: empty domain");
    if (f.size() != op.universe) throw PreconditionError("tietze_extend: window mismatch");

    TietzeResult out;
    if (a == SubsetMask::full(op.universe)) {   // nothing to extend
        out.g = f;
        out.continuity = check_nbhd_continuous(op, out.g, grid_step);
        return out;
    }

    const double mid = (f.lo + f.hi) / 2;
    const double m0 = (f.hi - f.lo) / 2;

    double fmin = f.hi, fmax = f.lo;
    a.for_each([&](std::size_t i) {
        fmin = std::min(fmin, f.values[i]);
        fmax = std::max(fmax, f.values[i]);
    });
    if (m0 <= kTau || fmax - fmin <= kTau) {   // constant restrictions extend exactly
        out.g = StepFunction(f.size(), m0 <= kTau ? mid : fmin, f.lo, f.hi);
        out.continuity = check_nbhd_continuous(op, out.g, grid_step);
        return out;
    }

    // Restriction with off-domain values parked at the midpoint.
    StepFunction fa(f.size(), mid, f.lo, f.hi);
    a.for_each([&](std::size_t i) { fa.values[i] = f.values[i]; });

    if (check_pre) {
        NbhdOperator induced = induce(op, a);
        auto cv = check_nbhd_continuous(induced, fa, grid_step, &a);
        if (!cv.pass)
            throw PreconditionError(
                "tietze_extend: restriction is not neighbourhood continuous for the induced "
                "operator; " + cv.detail);
    }

    std::vector<double> residual(f.size(), 0.0);
    a.for_each([&](std::size_t i) { residual[i] = f.values[i] - mid; });
    std::vector<double> g(f.size(), 0.0);

    double bound = m0;
    while (2 * bound > tol && out.steps < 200) {
        SubsetMask s(f.size()), t(f.size());
        a.for_each([&](std::size_t i) {
            if (residual[i] <= -bound / 3 + kTau) s.set(i);
            else if (residual[i] >= bound / 3 - kTau) t.set(i);
        });

        if (s.empty() && t.empty()) {
            // residual already within (-m/3, m/3); contract with the zero step
        } else if (t.empty()) {
            for (auto& v : g) v -= bound / 3;
            a.for_each([&](std::size_t i) { residual[i] += bound / 3; });
        } else if (s.empty()) {
            for (auto& v : g) v += bound / 3;
            a.for_each([&](std::size_t i) { residual[i] -= bound / 3; });
        } else {
            DyadicFamily fam = build_dyadic(op, s, t, depth, witness);
            StepFunction u = function_from_family(fam);
            for (std::size_t i = 0; i < g.size(); ++i)
                g[i] += (2 * u.values[i] - 1) * bound / 3;
            a.for_each([&](std::size_t i) { residual[i] -= (2 * u.values[i] - 1) * bound / 3; });
        }

        bound *= 2.0 / 3.0;
        ++out.steps;
        double sup = 0;
        a.for_each([&](std::size_t i) { sup = std::max(sup, std::abs(residual[i])); });
        out.residual_history.push_back(sup);
        out.contraction_bound.push_back(2 * m0 * std::pow(2.0 / 3.0, double(out.steps)));
        out.geometric_envelope.push_back(
            m0 * std::pow(2.0, double(out.steps) + 1) / std::pow(3.0, double(out.steps)));
    }

    out.sup_error = out.residual_history.empty() ? 0.0 : out.residual_history.back();
    std::vector<double> gv(f.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        gv[i] = std::clamp(g[i] + mid, f.lo, f.hi);
    out.g = StepFunction(std::move(gv), f.lo, f.hi);
    out.continuity = check_nbhd_continuous(op, out.g, grid_step);
    return out;
}

}  // namespace coarsekit
