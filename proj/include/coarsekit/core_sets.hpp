#pragma once

#include <functional>

#include "coarsekit/window.hpp"

namespace coarsekit {

/// Maps a subset to its closure within the window; the identity for discrete
/// presentations.
using ClosureOracle = std::function<SubsetMask(const SubsetMask&)>;

/// st(B, U): B together with every member of U that meets B.
SubsetMask star_set(const SubsetMask& base, const Family& fam);

/// Member-wise star, order preserved.
Family star_family(const Family& base, const Family& fam);

/// True iff every member of `fine` with at least two points is contained in
/// some member of `coarse`; singletons and empty members pass unconditionally.
bool refines(const Family& fine, const Family& coarse);

/// Chain-connectivity classes of the cover's intersection graph, unioned
/// down to points. Throws if the family fails to cover the window.
Partition u_components(const Family& cover, const Window& window);

/// Iterated star from a seed: B_1 = seed, B_{n+1} = st(B_n, U); returns the
/// closures A_n = closure(B_n), n = 1..steps. The output is inclusion-increasing.
std::vector<SubsetMask> exhaustion(const SubsetMask& seed, const Family& fam,
                                   std::size_t steps, const ClosureOracle& closure);

/// A maximal subset Y such that no member of the cover holds two points of Y,
/// grown greedily over ascending point index. Every window point lies in
/// st(Y, cover).
SubsetMask coarse_skeleton(const Family& cover, const Window& window);

}  // namespace coarsekit
