#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "coarsekit/spaces.hpp"
#include "coarsekit/step_function.hpp"
#include "coarsekit/topology.hpp"

namespace coarsekit {

enum class OperatorKind { Topological, Coarse, Hybrid, Uniform, Custom };
enum class Axiom { N0, N1, N2, N3, N4 };
enum class VerdictKind { Pass, Fail, Inconclusive };

std::string to_string(OperatorKind k);
std::string to_string(Axiom a);
std::string to_string(VerdictKind v);

/// Produces an intermediate set between a holding pair, or nothing.
using IntermediateWitness =
    std::function<std::optional<SubsetMask>(const SubsetMask&, const SubsetMask&)>;

/// A decidable neighbourhood relation on subset pairs of a fixed window.
/// holds(A, B) implies A is a subset of B for every kind.
struct NbhdOperator {
    OperatorKind kind = OperatorKind::Custom;
    std::size_t universe = 0;
    const SpacePresentation* space = nullptr;      // coarse / uniform quantifiers
    const FiniteTopology* topology = nullptr;      // explicit small-scale part
    std::function<bool(const SubsetMask&, const SubsetMask&)> relation;  // Custom
    /// Upward monotone in the second argument (axiom N2); true for the
    /// built-in kinds, lets the induced operator use its canonical witness.
    bool monotone_upward = true;
    std::string name;

    bool holds(const SubsetMask& a, const SubsetMask& b) const;
};

NbhdOperator topological_operator(const FiniteTopology& t);
NbhdOperator topological_operator(const SpacePresentation& p);
NbhdOperator coarse_operator(const SpacePresentation& p);
NbhdOperator hybrid_operator(const SpacePresentation& p, const FiniteTopology* t = nullptr);
NbhdOperator uniform_operator(const SpacePresentation& p);
NbhdOperator custom_operator(std::size_t universe,
                             std::function<bool(const SubsetMask&, const SubsetMask&)> rel,
                             std::string name, bool monotone_upward = false);

/// The operator induced on subsets of `domain`: S ≺ T iff some T' over the
/// full window has S ≺ T' and T' ∩ domain = T. The canonical witness
/// T ∪ (X∖domain) decides it for upward-monotone operators; otherwise an
/// exhaustive T' search runs within the budget.
NbhdOperator induce(const NbhdOperator& op, const SubsetMask& domain,
                    std::uint64_t budget = 1u << 20);

struct CheckBudget {
    std::uint64_t max_ops = 6'000'000'000ULL;   // estimated-work gate for exhaustive mode
    std::uint64_t samples = 20'000;
    std::uint64_t seed = 0xC0A125EULL;
};

struct AxiomVerdict {
    Axiom axiom = Axiom::N0;
    VerdictKind verdict = VerdictKind::Inconclusive;
    std::vector<SubsetMask> witness;        // violating subsets, in axiom order
    std::uint64_t checked = 0;
    std::string mode;                       // "exhaustive" | "sampled" | "witness"
    std::uint64_t seed = 0;
    std::string detail;
};

/// PASS/FAIL(witness)/INCONCLUSIVE. Exhaustive over all subset pairs (triples
/// for N2/N4, pair-pairs for N3) when the estimated work fits the budget,
/// else seeded random sampling with the sample count reported.
AxiomVerdict check_axiom(const NbhdOperator& op, Axiom axiom, const CheckBudget& budget = {});

/// N4 probed through an interpolation witness on (sampled or exhaustive)
/// holding pairs: FAIL carries the pair the witness could not split.
AxiomVerdict check_axiom_n4_witnessed(const NbhdOperator& op, const IntermediateWitness& witness,
                                      const CheckBudget& budget = {});

struct ContinuityVerdict {
    bool pass = true;
    double fail_a = 0, fail_b = 0;          // violating thresholds when failing
    std::uint64_t pairs_checked = 0;
    std::size_t threshold_count = 0;
    std::string detail;
};

/// Threshold-pair continuity: holds(f^{-1}([lo,a]), f^{-1}([lo,b))) for every
/// a < b drawn from a uniform grid joined with the function's breakpoints.
ContinuityVerdict check_nbhd_continuous(const NbhdOperator& op, const StepFunction& f,
                                        double grid_step = 1.0 / 32,
                                        const SubsetMask* domain = nullptr);

}  // namespace coarsekit
