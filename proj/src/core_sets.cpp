#include "coarsekit/core_sets.hpp"

#include <numeric>
#include <stdexcept>

namespace coarsekit {

namespace {

bool member_meets(const std::vector<std::uint32_t>& member, const SubsetMask& mask) {
    for (auto i : member)
        if (mask.test(i)) return true;
    return false;
}

// Plain union-find, path halving.
struct DSU {
    std::vector<std::uint32_t> parent;
    explicit DSU(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SubsetMask star_set(const SubsetMask& base, const Family& fam) {
    if (base.universe() != fam.universe)
        throw std::invalid_argument("star_set: window mismatch");
    SubsetMask out = base;
    for (const auto& member : fam.members) {
        if (member_meets(member, base))
            for (auto i : member) out.set(i);
    }
    return out;
}

Family star_family(const Family& base, const Family& fam) {
    if (base.universe != fam.universe)
        throw std::invalid_argument("star_family: window mismatch");
    Family out(base.universe, base.tag.empty() ? std::string{} : "st(" + base.tag + ")");
    out.members.reserve(base.size());
    for (const auto& member : base.members)
        out.add(star_set(SubsetMask::of(base.universe, member), fam));
    return out;
}

bool refines(const Family& fine, const Family& coarse) {
    if (fine.universe != coarse.universe)
        throw std::invalid_argument("refines: window mismatch");
    // Point -> members-of-coarse index, so candidate supersets are found by
    // the first point instead of a full scan.
    std::vector<std::vector<std::uint32_t>> through(coarse.universe);
    for (std::uint32_t j = 0; j < coarse.size(); ++j)
        for (auto i : coarse.members[j]) through[i].push_back(j);

    for (const auto& member : fine.members) {
        if (member.size() < 2) continue;   // degenerate members pass
        bool contained = false;
        for (auto j : through[member.front()]) {
            const auto& big = coarse.members[j];
            if (std::includes(big.begin(), big.end(), member.begin(), member.end())) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

Partition u_components(const Family& cover, const Window& window) {
    if (cover.universe != window.size)
        throw std::invalid_argument("u_components: window mismatch");
    if (!cover.covers(window.size))
        throw std::invalid_argument("u_components: family does not cover the window");

    // Two members intersect iff they share a point, so uniting the points of
    // each member yields exactly the chain-connectivity classes.
    DSU dsu(window.size);
    for (const auto& member : cover.members)
        for (std::size_t k = 1; k < member.size(); ++k)
            dsu.unite(member[k - 1], member[k]);

    Partition part;
    part.class_of.assign(window.size, 0);
    std::vector<std::uint32_t> relabel(window.size, UINT32_MAX);
    for (std::uint32_t i = 0; i < window.size; ++i) {
        const std::uint32_t root = dsu.find(i);
        if (relabel[root] == UINT32_MAX)
            relabel[root] = static_cast<std::uint32_t>(part.count++);
        part.class_of[i] = relabel[root];
    }
    return part;
}

std::vector<SubsetMask> exhaustion(const SubsetMask& seed, const Family& fam,
                                   std::size_t steps, const ClosureOracle& closure) {
    if (seed.universe() != fam.universe)
        throw std::invalid_argument("exhaustion: window mismatch");
    if (seed.empty()) throw std::invalid_argument("exhaustion: empty seed");
    if (steps == 0) throw std::invalid_argument("exhaustion: steps must be >= 1");

    std::vector<SubsetMask> out;
    out.reserve(steps);
    SubsetMask current = seed;
    for (std::size_t n = 0; n < steps; ++n) {
        out.push_back(closure ? closure(current) : current);
        if (n + 1 < steps) current = star_set(current, fam);
    }
    return out;
}

SubsetMask coarse_skeleton(const Family& cover, const Window& window) {
    if (cover.universe != window.size)
        throw std::invalid_argument("coarse_skeleton: window mismatch");
    if (!cover.covers(window.size))
        throw std::invalid_argument("coarse_skeleton: family does not cover the window");

    std::vector<std::vector<std::uint32_t>> through(window.size);
    for (std::uint32_t j = 0; j < cover.size(); ++j)
        for (auto i : cover.members[j]) through[i].push_back(j);

    SubsetMask picked(window.size);
    std::vector<char> member_hit(cover.size(), 0);   // member already holds a picked point
    for (std::uint32_t p = 0; p < window.size; ++p) {
        bool admissible = true;
        for (auto j : through[p])
            if (member_hit[j]) { admissible = false; break; }
        if (!admissible) continue;
        picked.set(p);
        for (auto j : through[p]) member_hit[j] = 1;
    }
    return picked;
}

}  // namespace coarsekit
