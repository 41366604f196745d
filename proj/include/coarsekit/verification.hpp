#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsekit/constructions.hpp"
#include "coarsekit/operators.hpp"

namespace coarsekit {

/// Per-scale outcome of the slow-oscillation scan. The exception set K is the
/// canonical maximal witness: the union of every member whose image diameter
/// reaches epsilon.
struct OscillationReport {
    std::size_t scale_index = 0;
    std::string scale_tag;
    double epsilon = 0;
    bool pass = false;                       // K weakly bounded
    SubsetMask exception_set;                // empty mask when no offender
    double max_excess_diameter = 0;          // largest offending image diameter
    std::vector<std::uint32_t> witness_member;   // an offending member when failing
};

std::vector<OscillationReport> check_slowly_oscillating(const SpacePresentation& p,
                                                        const StepFunction& f, double eps);

/// All grid epsilons, all ladder scales.
bool slowly_oscillating_verdict(const SpacePresentation& p, const StepFunction& f,
                                const std::vector<double>& eps_grid);

struct SeparationScale {
    std::size_t scale_index = 0;
    std::string scale_tag;
    bool weakly_bounded = false;
    std::size_t intersection_size = 0;
    double intersection_diameter = 0;
};

struct SeparationReport {
    std::vector<SeparationScale> scales;
    bool pass = true;                        // conjunction over scales
};

SeparationReport check_coarsely_separated(const SpacePresentation& p, const SubsetMask& a,
                                          const SubsetMask& b,
                                          const std::vector<Family>& extra_scales = {});

/// The boundary-accumulation probe family for LSXA separation checks: points
/// of B and C paired by their rank of approach to each boundary point.
std::vector<Family> lsxa_pair_probes(const SpacePresentation& p, const SubsetMask& b,
                                     const SubsetMask& c);

struct WitnessFamilyResult {
    Family family;                            // the two-point members {z_i, w_i}
    int m_threshold = 0;                      // first usable row - 3
    std::size_t rows_covered = 0;
    double min_gap = 0;
    bool certified = false;                   // family passes the wedge scale test
    std::string certification_detail;
    struct Row { int y; std::uint32_t z; std::uint32_t w; double gap; };
    std::vector<Row> rows;
};

/// Extracts the oscillation-violating pair family of a separating candidate on
/// the wedge window. The candidate must send the diagonals into [0,delta] and
/// [1-delta,1] and be slowly oscillating for the ambient metric ladder.
WitnessFamilyResult nonnormal_witness(const SpacePresentation& p, const StepFunction& f,
                                      int m_hint = 0, double delta = 1.0 / 6);

struct GroupNbhdVerdict {
    bool pass = true;
    std::vector<std::uint32_t> failing_points;
    std::size_t checked_points = 0;
    bool coarse_verdict = false;              // holds(coarse, U, N) on the ladder
    bool agrees = false;
};

/// Escape test U·V·x·V ∖ N for sampled window points x, cross-checked against
/// the coarse operator on the translate ladder.
GroupNbhdVerdict group_coarse_nbhd(const SpacePresentation& p, const SubsetMask& u,
                                   const SubsetMask& n,
                                   const std::vector<std::uint32_t>& sample_x = {});

struct CnProbe {
    SubsetMask a;
    SubsetMask n;
    std::string tag;
};

struct CnVerdict {
    bool pass = true;
    std::size_t probes_checked = 0;
    std::optional<std::size_t> failing_probe;
    std::string detail;
};

/// Compatibility of a family with coarse neighbourhoods: for every probe
/// (A, N) with N a coarse neighbourhood of A, st(A, U) ∖ N must be bounded.
CnVerdict cn_membership(const SpacePresentation& p, const Family& u,
                        const std::vector<CnProbe>& probes);

/// The falsification probe template: first points of growing-diameter members,
/// with half-diameter balls around them.
std::optional<CnProbe> cn_auto_probe(const SpacePresentation& p, const Family& u);

/// All (A, N) probe pairs with N a coarse neighbourhood of A, for exhaustive
/// small-window runs.
std::vector<CnProbe> cn_exhaustive_probes(const SpacePresentation& p, std::size_t max_window = 12);

struct LsContinuityVerdict {
    bool direct_pass = true;      // every domain scale pushes to a codomain scale
    bool preimage_pass = true;    // coarse neighbourhoods pull back to coarse neighbourhoods
    bool agree = false;
    std::size_t probes_checked = 0;
    std::string detail;
};

/// Two routes to ls-continuity at the window, compared.
LsContinuityVerdict check_ls_continuity(const SpacePresentation& px, const SpacePresentation& py,
                                        const std::vector<std::uint32_t>& point_map,
                                        const std::vector<CnProbe>& probes);

/// Codomain probe built from pairs that are close in the domain but spread in
/// the codomain.
std::optional<CnProbe> ls_auto_probe(const SpacePresentation& px, const SpacePresentation& py,
                                     const std::vector<std::uint32_t>& point_map);

}  // namespace coarsekit
