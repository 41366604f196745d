#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarsekit/bitset.hpp"

namespace coarsekit {

/// The finite ground set. Points are indices 0..size-1; optional integer
/// coordinate labels place them in Z^d or on a scaled grid.
struct Window {
    std::size_t size = 0;
    int dim = 0;                   // 0 = unlabeled
    std::vector<int> coords;       // flat, size*dim entries when labeled

    Window() = default;
    explicit Window(std::size_t n) : size(n) {
        if (n == 0) throw std::invalid_argument("Window: size must be >= 1");
    }
    Window(std::size_t n, int d, std::vector<int> flat)
        : size(n), dim(d), coords(std::move(flat)) {
        if (n == 0) throw std::invalid_argument("Window: size must be >= 1");
        if (coords.size() != n * static_cast<std::size_t>(d))
            throw std::invalid_argument("Window: label arity mismatch");
    }

    bool labeled() const { return dim > 0; }

    std::span<const int> label(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

/// A finite list of subsets of a common window: a cover or scale candidate.
/// Members are kept as sorted index lists (duplicates between members are
/// allowed; a family is a multiset of sets).
struct Family {
    std::size_t universe = 0;
    std::vector<std::vector<std::uint32_t>> members;
    std::string tag;

    Family() = default;
    explicit Family(std::size_t n, std::string t = {}) : universe(n), tag(std::move(t)) {}

    void add(std::vector<std::uint32_t> member) {
        std::sort(member.begin(), member.end());
        member.erase(std::unique(member.begin(), member.end()), member.end());
        for (auto i : member)
            if (i >= universe) throw std::out_of_range("Family: member index beyond window");
        members.push_back(std::move(member));
    }

    void add(const SubsetMask& m) {
        if (m.universe() != universe) throw std::invalid_argument("Family: window mismatch");
        members.push_back(m.to_indices());
    }

    SubsetMask member_mask(std::size_t j) const {
        return SubsetMask::of(universe, members[j]);
    }

    std::size_t size() const { return members.size(); }

    /// True when every window point lies in some member.
    bool covers(std::size_t window_size) const {
        std::vector<char> seen(window_size, 0);
        for (const auto& m : members)
            for (auto i : m) seen[i] = 1;
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }
};

/// A partition of the window, as a class id per point.
struct Partition {
    std::vector<std::uint32_t> class_of;   // one entry per point
    std::size_t count = 0;

    std::vector<std::vector<std::uint32_t>> classes() const {
        std::vector<std::vector<std::uint32_t>> out(count);
        for (std::size_t i = 0; i < class_of.size(); ++i)
            out[class_of[i]].push_back(static_cast<std::uint32_t>(i));
        return out;
    }
};

}  // namespace coarsekit
