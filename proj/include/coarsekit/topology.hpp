#pragma once

#include <vector>

#include "coarsekit/bitset.hpp"

namespace coarsekit {

/// An explicit finite topology: the open sets, closed under union and
/// intersection, containing the empty set and the whole window. Closure
/// properties are verified at construction.
class FiniteTopology {
public:
    FiniteTopology(std::size_t universe, std::vector<SubsetMask> opens);

    std::size_t universe() const { return universe_; }
    const std::vector<SubsetMask>& opens() const { return opens_; }

    /// Smallest closed superset.
    SubsetMask closure(const SubsetMask& a) const;
    /// Largest open subset.
    SubsetMask interior(const SubsetMask& a) const;
    bool is_open(const SubsetMask& a) const;

private:
    std::size_t universe_;
    std::vector<SubsetMask> opens_;
};

}  // namespace coarsekit
