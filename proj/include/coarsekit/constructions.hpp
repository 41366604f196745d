#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarsekit/operators.hpp"
#include "coarsekit/step_function.hpp"

namespace coarsekit {

/// Input data violates an operation's contract (maps to CLI exit 2).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A construction step failed, e.g. an interpolation witness found no
/// intermediate set (maps to CLI exit 3).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Produces intermediate sets for holding pairs; FAIL is reported by nullopt.
struct N4Witness {
    IntermediateWitness fn;
    std::string name;
};

/// Witness backed by the metric midpoint set {x : d(x,A) <= d(x, X∖U)}.
N4Witness metric_witness(const SpacePresentation& p);

/// Witness searching all candidate intermediate sets, for small windows or
/// explicit topologies.
N4Witness exhaustive_witness(const NbhdOperator& op, std::uint64_t budget = 1u << 22);

/// V = {x : d(x,A) <= d(x, X∖U)}; contains A, closed at the resolution, and
/// intermediate between A and U under the presentation's hybrid operator.
/// Conventions: d(x, ∅) = +inf (U = X gives V = X); A = ∅ returns ∅.
SubsetMask metric_interpolate(const SpacePresentation& p, const SubsetMask& a,
                              const SubsetMask& u, bool check_pre = true);

/// Nested sets indexed by the dyadic fractions k/2^depth; adjacent pairs are
/// certified under the governing operator at construction.
struct DyadicFamily {
    int depth = 0;
    std::vector<SubsetMask> sets;   // size 2^depth + 1, index k ↦ k/2^depth
    bool certified = false;

    double index_value(std::size_t k) const {
        return static_cast<double>(k) / static_cast<double>(std::size_t{1} << depth);
    }
};

DyadicFamily build_dyadic(const NbhdOperator& op, const SubsetMask& a, const SubsetMask& b,
                          int depth, const N4Witness& witness);

/// f(x) = min{ s : x ∈ sets[s] }, 1 when x lies in none.
StepFunction function_from_family(const DyadicFamily& fam);

struct UrysohnResult {
    StepFunction f;
    DyadicFamily family;
    ContinuityVerdict continuity;
};

/// Separating function for a holding pair: f(A) ⊆ {0}, f(B) ⊆ {1}, with the
/// continuity verdict attached.
UrysohnResult urysohn(const NbhdOperator& op, const SubsetMask& a, const SubsetMask& b,
                      int depth, const N4Witness& witness, double grid_step = 1.0 / 32);

struct TietzeResult {
    StepFunction g;
    std::size_t steps = 0;
    double sup_error = 0;
    std::vector<double> residual_history;   // sup |r| on A after each step
    std::vector<double> contraction_bound;  // 2M(2/3)^k, aligned with history
    std::vector<double> geometric_envelope; // the 2^{n+1}/3^n bookkeeping, scaled to M
    ContinuityVerdict continuity;
};

/// Extends f from A to the window by iterated midpoint steps: at residual
/// bound m the step function is confined to [-m/3, m/3] and the residual
/// contracts to (2/3)m; stops when 2m <= tol. When one residual band is empty
/// the step is the matching constant (0 when both are empty), which keeps
/// constant inputs exact.
TietzeResult tietze_extend(const NbhdOperator& op, const SubsetMask& a, const StepFunction& f,
                           double tol, const N4Witness& witness, int depth = 6,
                           double grid_step = 1.0 / 32, bool check_pre = true);

}  // namespace coarsekit
