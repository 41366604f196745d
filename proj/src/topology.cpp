#include "coarsekit/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace coarsekit {

FiniteTopology::FiniteTopology(std::size_t universe, std::vector<SubsetMask> opens)
    : universe_(universe), opens_(std::move(opens)) {
    for (const auto& o : opens_)
        if (o.universe() != universe_)
            throw std::invalid_argument("FiniteTopology: window mismatch");

    auto contains = [&](const SubsetMask& m) {
        return std::find(opens_.begin(), opens_.end(), m) != opens_.end();
    };
    if (!contains(SubsetMask(universe_)) || !contains(SubsetMask::full(universe_)))
        throw std::invalid_argument("FiniteTopology: must contain the empty set and the window");
    for (std::size_t i = 0; i < opens_.size(); ++i)
        for (std::size_t j = i + 1; j < opens_.size(); ++j) {
            if (!contains(opens_[i] | opens_[j]))
                throw std::invalid_argument("FiniteTopology: not closed under union");
            if (!contains(opens_[i] & opens_[j]))
                throw std::invalid_argument("FiniteTopology: not closed under intersection");
        }
}

SubsetMask FiniteTopology::closure(const SubsetMask& a) const {
    // Complement of the union of opens missing a.
    SubsetMask miss(universe_);
    for (const auto& o : opens_)
        if (!o.intersects(a)) miss |= o;
    return miss.complement() | a;
}

SubsetMask FiniteTopology::interior(const SubsetMask& a) const {
    SubsetMask out(universe_);
    for (const auto& o : opens_)
        if (o.subset_of(a)) out |= o;
    return out;
}

bool FiniteTopology::is_open(const SubsetMask& a) const {
    return std::find(opens_.begin(), opens_.end(), a) != opens_.end();
}

}  // namespace coarsekit
