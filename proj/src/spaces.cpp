#include "coarsekit/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace coarsekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t pack(const std::array<int, 3>& c) {
    constexpr std::int64_t offset = 1 << 20;
    return (c[0] + offset) | ((c[1] + offset) << 21) | ((c[2] + offset) << 42);
}

struct DSU {
    std::vector<std::uint32_t> parent;
    explicit DSU(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

// Number of +-1 sign functionals that compute the l1 diameter exactly.
int l1_functional_count(int dim) { return dim <= 1 ? 1 : (dim == 2 ? 2 : 4); }

double l1_functional(const std::array<int, 3>& c, int dim, int which) {
    if (dim <= 1) return c[0];
    if (dim == 2) return which == 0 ? c[0] + c[1] : c[0] - c[1];
    switch (which) {
        case 0: return c[0] + c[1] + c[2];
        case 1: return c[0] + c[1] - c[2];
        case 2: return c[0] - c[1] + c[2];
        default: return c[0] - c[1] - c[2];
    }
}

}  // namespace

std::string to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::Metric: return "Metric";
        case SpaceKind::C0: return "C0";
        case SpaceKind::Group: return "Group";
        case SpaceKind::MaxUlf: return "MaxULF";
        case SpaceKind::Lsxa: return "LSXA";
        case SpaceKind::HalfPlaneNonNormal: return "HalfPlaneNonNormal";
    }
    return "?";
}

std::array<int, 3> SpacePresentation::label_of(std::size_t i) const {
    std::array<int, 3> c{0, 0, 0};
    if (window.labeled()) {
        auto l = window.label(i);
        for (int d = 0; d < window.dim; ++d) c[d] = l[d];
    }
    return c;
}

double SpacePresentation::distance(std::size_t i, std::size_t j) const {
    if (metric_type == MetricType::Word) {
        auto a = label_of(i), b = label_of(j);
        std::array<int, 3> d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
        auto len = word_length(d);
        return len ? static_cast<double>(*len) : kInf;
    }
    auto a = label_of(i), b = label_of(j);
    double out = 0;
    switch (metric_type) {
        case MetricType::L1:
            for (int d = 0; d < window.dim; ++d) out += std::abs(a[d] - b[d]);
            break;
        case MetricType::Linf:
            for (int d = 0; d < window.dim; ++d) out = std::max(out, double(std::abs(a[d] - b[d])));
            break;
        case MetricType::L2: {
            double s = 0;
            for (int d = 0; d < window.dim; ++d) s += double(a[d] - b[d]) * (a[d] - b[d]);
            out = std::sqrt(s);
            break;
        }
        default: break;
    }
    return out * resolution;
}

double SpacePresentation::distance_to(std::size_t i, const SubsetMask& s) const {
    double best = kInf;
    s.for_each([&](std::size_t j) { best = std::min(best, distance(i, j)); });
    return best;
}

double SpacePresentation::set_gap(const SubsetMask& a, const SubsetMask& b) const {
    double best = kInf;
    a.for_each([&](std::size_t i) { best = std::min(best, distance_to(i, b)); });
    return best;
}

double SpacePresentation::diameter(const SubsetMask& s) const {
    if (s.empty()) return 0;
    if (metric_type == MetricType::L1 || metric_type == MetricType::Linf) {
        const int dim = std::max(window.dim, 1);
        const int nf = metric_type == MetricType::L1 ? l1_functional_count(dim) : dim;
        double lo[4], hi[4];
        for (int k = 0; k < nf; ++k) { lo[k] = kInf; hi[k] = -kInf; }
        s.for_each([&](std::size_t i) {
            auto c = label_of(i);
            for (int k = 0; k < nf; ++k) {
                const double v = metric_type == MetricType::L1
                                     ? l1_functional(c, dim, k)
                                     : double(c[k]);
                lo[k] = std::min(lo[k], v);
                hi[k] = std::max(hi[k], v);
            }
        });
        double best = 0;
        for (int k = 0; k < nf; ++k) best = std::max(best, hi[k] - lo[k]);
        return best * resolution;
    }
    // L2 and word metrics: pairwise scan.
    auto idx = s.to_indices();
    double best = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            best = std::max(best, distance(idx[a], idx[b]));
    return best;
}

SubsetMask SpacePresentation::closure(const SubsetMask& s) const {
    if (closure_radius <= 0) return s;
    SubsetMask out = s;
    s.for_each([&](std::size_t i) {
        ball(i, closure_radius).for_each([&](std::size_t j) { out.set(j); });
    });
    return out;
}

ClosureOracle SpacePresentation::closure_oracle() const {
    return [this](const SubsetMask& s) { return closure(s); };
}

void SpacePresentation::build_neighbor_buckets(double cell) const {
    if (bucket_cell_ == cell) return;
    bucket_cell_ = cell;
    buckets_.clear();
    for (std::uint32_t i = 0; i < window.size; ++i) {
        auto c = label_of(i);
        std::array<int, 3> key{0, 0, 0};
        for (int d = 0; d < window.dim; ++d)
            key[d] = static_cast<int>(std::floor(c[d] / cell));
        buckets_[pack(key)].push_back(i);
    }
}

SubsetMask SpacePresentation::ball(std::size_t center, double radius) const {
    SubsetMask out(window.size);
    out.set(center);
    if (radius <= 0) return out;
    if (metric_type == MetricType::Word) {
        for (std::uint32_t j = 0; j < window.size; ++j)
            if (distance(center, j) <= radius + kTau) out.set(j);
        return out;
    }
    const double cell = std::max(radius / resolution, 1.0);
    build_neighbor_buckets(cell);
    auto c = label_of(center);
    std::array<int, 3> base{0, 0, 0};
    for (int d = 0; d < window.dim; ++d)
        base[d] = static_cast<int>(std::floor(c[d] / cell));
    const int reach = 1 + static_cast<int>(radius / (resolution * cell));
    std::array<int, 3> key{0, 0, 0};
    const int zr = window.dim > 2 ? reach : 0;
    const int yr = window.dim > 1 ? reach : 0;
    for (int dz = -zr; dz <= zr; ++dz)
        for (int dy = -yr; dy <= yr; ++dy)
            for (int dx = -reach; dx <= reach; ++dx) {
                key = {base[0] + dx, base[1] + dy, base[2] + dz};
                auto it = buckets_.find(pack(key));
                if (it == buckets_.end()) continue;
                for (auto j : it->second)
                    if (distance(center, j) <= radius + kTau) out.set(j);
            }
    return out;
}

// --------------------------------------------------------------------------
// boundedness
// --------------------------------------------------------------------------

double SpacePresentation::lsxa_distance_to_excluded(std::size_t i) const {
    auto c = label_of(i);
    double best = kInf;
    for (const auto& a : excluded) {
        double v = 0;
        switch (metric_type) {
            case MetricType::L1:
                for (int d = 0; d < window.dim; ++d) v += std::abs(c[d] - a[d]);
                break;
            case MetricType::Linf:
                for (int d = 0; d < window.dim; ++d) v = std::max(v, double(std::abs(c[d] - a[d])));
                break;
            default: {
                double s = 0;
                for (int d = 0; d < window.dim; ++d) s += double(c[d] - a[d]) * (c[d] - a[d]);
                v = std::sqrt(s);
                break;
            }
        }
        best = std::min(best, v * resolution);
    }
    return best;
}

bool SpacePresentation::is_bounded(const SubsetMask& k) const {
    if (k.empty()) return true;
    switch (kind) {
        case SpaceKind::MaxUlf:
            return static_cast<double>(k.count()) <= cutoff + kTau;
        case SpaceKind::Lsxa: {
            bool ok = true;
            k.for_each([&](std::size_t i) {
                if (lsxa_distance_to_excluded(i) <= resolution * (1 + kTau)) ok = false;
            });
            return ok;
        }
        default:
            return diameter(k) <= cutoff + kTau;
    }
}

bool SpacePresentation::weakly_bounded(const SubsetMask& k) const {
    if (k.empty() || all_weakly_bounded_) return true;
    if (kind == SpaceKind::Lsxa) return is_bounded(k);   // near-boundary singletons decide

    const auto& comp = components_.class_of;
    if (kind == SpaceKind::MaxUlf) {
        std::vector<std::size_t> counts(components_.count, 0);
        bool ok = true;
        k.for_each([&](std::size_t i) {
            if (++counts[comp[i]] > cutoff + kTau) ok = false;
        });
        return ok;
    }
    if (metric_type == MetricType::L1 || metric_type == MetricType::Linf) {
        const int dim = std::max(window.dim, 1);
        const int nf = metric_type == MetricType::L1 ? l1_functional_count(dim) : dim;
        std::vector<std::array<double, 8>> stats(components_.count);
        std::vector<char> seen(components_.count, 0);
        k.for_each([&](std::size_t i) {
            auto& st = stats[comp[i]];
            auto c = label_of(i);
            if (!seen[comp[i]]) {
                seen[comp[i]] = 1;
                for (int f = 0; f < nf; ++f) { st[2 * f] = kInf; st[2 * f + 1] = -kInf; }
            }
            for (int f = 0; f < nf; ++f) {
                const double v = metric_type == MetricType::L1
                                     ? l1_functional(c, dim, f) : double(c[f]);
                st[2 * f] = std::min(st[2 * f], v);
                st[2 * f + 1] = std::max(st[2 * f + 1], v);
            }
        });
        for (std::size_t cid = 0; cid < components_.count; ++cid) {
            if (!seen[cid]) continue;
            for (int f = 0; f < nf; ++f)
                if ((stats[cid][2 * f + 1] - stats[cid][2 * f]) * resolution > cutoff + kTau)
                    return false;
        }
        return true;
    }
    // L2 / word metrics: collect per component, then pairwise.
    std::vector<std::vector<std::uint32_t>> per(components_.count);
    k.for_each([&](std::size_t i) { per[comp[i]].push_back(static_cast<std::uint32_t>(i)); });
    for (const auto& pts : per) {
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (distance(pts[a], pts[b]) > cutoff + kTau) return false;
    }
    return true;
}

void SpacePresentation::build_components() {
    DSU dsu(window.size);
    std::size_t merges = 0;
    if (kind == SpaceKind::MaxUlf) {
        if (cutoff + kTau >= 2)
            for (std::uint32_t i = 1; i < window.size; ++i) merges += dsu.unite(0, i);
    } else if (kind == SpaceKind::Lsxa) {
        // Pairs are bounded iff both points sit clear of the boundary set, so
        // the clear points form one component, boundary-adjacent points are
        // singletons.
        std::int64_t first_far = -1;
        for (std::uint32_t i = 0; i < window.size; ++i) {
            if (lsxa_distance_to_excluded(i) > resolution * (1 + kTau)) {
                if (first_far < 0) first_far = i;
                else dsu.unite(static_cast<std::uint32_t>(first_far), i);
            }
        }
    } else if (window.dim == 1) {
        std::vector<std::uint32_t> order(window.size);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return window.label(a)[0] < window.label(b)[0];
        });
        for (std::size_t k = 1; k < order.size(); ++k)
            if (distance(order[k - 1], order[k]) <= cutoff + kTau)
                dsu.unite(order[k - 1], order[k]);
    } else {
        // Fine pass: link points within one resolution step (word metric: one
        // generator); if that connects the window we are done.
        if (metric_type == MetricType::Word) {
            for (std::uint32_t i = 0; i < window.size; ++i) {
                auto c = label_of(i);
                for (const auto& g : generators) {
                    auto j = index_of_label({c[0] + g[0], c[1] + g[1], c[2] + g[2]});
                    if (j) merges += dsu.unite(i, *j);
                }
            }
        } else {
            for (std::uint32_t i = 0; i < window.size; ++i)
                ball(i, resolution * (1 + kTau)).for_each([&](std::size_t j) {
                    if (j != i) dsu.unite(i, static_cast<std::uint32_t>(j));
                });
        }
        std::size_t roots = 0;
        for (std::uint32_t i = 0; i < window.size; ++i) roots += dsu.find(i) == i;
        if (roots > 1) {
            if (window.size <= 5000) {
                for (std::uint32_t i = 0; i < window.size; ++i)
                    for (std::uint32_t j = i + 1; j < window.size; ++j)
                        if (dsu.find(i) != dsu.find(j) && distance(i, j) <= cutoff + kTau)
                            dsu.unite(i, j);
            } else {
                for (std::uint32_t i = 0; i < window.size; ++i)
                    ball(i, cutoff).for_each([&](std::size_t j) {
                        if (j != i) dsu.unite(i, static_cast<std::uint32_t>(j));
                    });
            }
        }
    }

    components_.class_of.assign(window.size, 0);
    components_.count = 0;
    std::vector<std::uint32_t> relabel(window.size, UINT32_MAX);
    for (std::uint32_t i = 0; i < window.size; ++i) {
        const auto root = dsu.find(i);
        if (relabel[root] == UINT32_MAX)
            relabel[root] = static_cast<std::uint32_t>(components_.count++);
        components_.class_of[i] = relabel[root];
    }

    all_weakly_bounded_ = true;
    std::vector<SubsetMask> masks(components_.count, SubsetMask(window.size));
    for (std::uint32_t i = 0; i < window.size; ++i) masks[components_.class_of[i]].set(i);
    for (const auto& m : masks)
        if (!is_bounded(m)) { all_weakly_bounded_ = false; break; }
}

// --------------------------------------------------------------------------
// scale generators
// --------------------------------------------------------------------------

Family SpacePresentation::ball_cover(double radius, const std::string& tag) const {
    Family fam(window.size, tag);
    fam.members.reserve(window.size);
    for (std::uint32_t i = 0; i < window.size; ++i)
        fam.members.push_back(ball(i, radius).to_indices());
    return fam;
}

Family SpacePresentation::metric_scale(double radius) const {
    if (!has_metric()) throw std::invalid_argument("metric_scale: kind lacks a metric");
    if (radius <= 0) throw std::invalid_argument("metric_scale: radius must be positive");
    return ball_cover(radius, "balls-" + std::to_string(radius));
}

Family SpacePresentation::c0_decay_cover(double radius) const {
    // Ball radii shrink away from the window origin, so member diameters
    // vanish outside a bounded region, per epsilon.
    std::uint32_t origin = 0;
    double best = kInf;
    for (std::uint32_t i = 0; i < window.size; ++i) {
        auto c = label_of(i);
        double n = std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]);
        if (n < best) { best = n; origin = i; }
    }
    Family fam(window.size, "c0-decay-" + std::to_string(radius));
    for (std::uint32_t i = 0; i < window.size; ++i) {
        const double r = radius / (1 + distance(i, origin));
        fam.members.push_back(ball(i, r).to_indices());
    }
    return fam;
}

Family SpacePresentation::wedge_pair_family(double slope) const {
    Family fam(window.size, "pairs-slope-" + std::to_string(slope));
    for (int y = 1; y <= y_max; ++y) {
        const int x = static_cast<int>(std::lround(slope * y));
        if (x > y) continue;
        auto l = index_of_label({-x, y, 0});
        auto r = index_of_label({x, y, 0});
        if (l && r && *l != *r) fam.members.push_back({std::min(*l, *r), std::max(*l, *r)});
    }
    for (std::uint32_t i = 0; i < window.size; ++i) fam.members.push_back({i});
    return fam;
}

Family SpacePresentation::ulf_block_family(std::size_t block) const {
    Family fam(window.size, "blocks-" + std::to_string(block));
    for (std::uint32_t start = 0; start < window.size; start += block) {
        std::vector<std::uint32_t> m;
        for (std::uint32_t i = start; i < std::min<std::size_t>(start + block, window.size); ++i)
            m.push_back(i);
        fam.members.push_back(std::move(m));
    }
    return fam;
}

Family SpacePresentation::lsxa_default_scale() const {
    if (kind != SpaceKind::Lsxa)
        throw std::invalid_argument("lsxa_default_scale: wrong presentation kind");
    Family fam(window.size, "lsxa-half-gap-balls");
    for (std::uint32_t i = 0; i < window.size; ++i)
        fam.members.push_back(ball(i, lsxa_distance_to_excluded(i) / 2).to_indices());
    return fam;
}

SubsetMask SpacePresentation::group_star(const SubsetMask& e, const SubsetMask& f) const {
    if (kind != SpaceKind::Group)
        throw std::invalid_argument("group_star: wrong presentation kind");
    SubsetMask out(window.size);
    auto fs = f.to_indices();
    e.for_each([&](std::size_t ei) {
        auto ec = label_of(ei);
        for (auto f1 : fs) {
            auto c1 = label_of(f1);
            for (auto f2 : fs) {
                auto c2 = label_of(f2);
                auto j = index_of_label({ec[0] - c1[0] + c2[0],
                                         ec[1] - c1[1] + c2[1],
                                         ec[2] - c1[2] + c2[2]});
                if (j) out.set(*j);
            }
        }
    });
    return out;
}

std::optional<int> SpacePresentation::word_length(std::array<int, 3> c) const {
    auto it = word_len_.find(pack(c));
    if (it == word_len_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> SpacePresentation::index_of_label(std::array<int, 3> c) const {
    auto it = coord_index_.find(pack(c));
    if (it == coord_index_.end()) return std::nullopt;
    return it->second;
}

// --------------------------------------------------------------------------
// scale membership
// --------------------------------------------------------------------------

namespace {
double indices_diameter(const SpacePresentation& p, const std::vector<std::uint32_t>& m) {
    double best = 0;
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = a + 1; b < m.size(); ++b)
            best = std::max(best, p.distance(m[a], m[b]));
    return best;
}
}  // namespace

double SpacePresentation::max_point_star_card(const Family& f) const {
    std::vector<std::vector<std::uint32_t>> through(window.size);
    for (std::uint32_t j = 0; j < f.size(); ++j)
        for (auto i : f.members[j]) through[i].push_back(j);
    std::vector<std::uint32_t> stamp(window.size, UINT32_MAX);
    double best = 0;
    for (std::uint32_t x = 0; x < window.size; ++x) {
        std::size_t card = 0;
        for (auto j : through[x])
            for (auto i : f.members[j])
                if (stamp[i] != x) { stamp[i] = x; ++card; }
        best = std::max(best, static_cast<double>(card));
    }
    return best;
}

bool SpacePresentation::is_scale_metric(const Family& f, std::string* why) const {
    for (auto idx : metric_idx_)
        if (refines(f, ladder_[idx])) {
            if (why) *why = "refines " + ladder_[idx].tag;
            return true;
        }
    if (why) *why = "refines no ladder ball cover";
    return false;
}

bool SpacePresentation::is_scale_c0(const Family& f, std::string* why) const {
    for (double eps : eps_grid) {
        SubsetMask k(window.size);
        for (const auto& m : f.members)
            if (indices_diameter(*this, m) > eps + kTau)
                for (auto i : m) k.set(i);
        if (!is_bounded(k)) {
            if (why) *why = "oversized members unbounded at eps=" + std::to_string(eps);
            return false;
        }
    }
    if (why) *why = "oversized members bounded at every grid eps";
    return true;
}

bool SpacePresentation::is_scale_group(const Family& f, std::string* why) const {
    double worst = 0;
    for (const auto& m : f.members)
        if (m.size() >= 2) worst = std::max(worst, indices_diameter(*this, m));
    if (why) *why = "max member word diameter " + std::to_string(worst);
    return worst <= cutoff + kTau;
}

bool SpacePresentation::is_scale_maxulf(const Family& f, std::string* why) const {
    const double m = max_point_star_card(f);
    if (why) *why = "locality bound m=" + std::to_string(static_cast<long long>(m));
    return m <= cutoff + kTau;
}

bool SpacePresentation::is_scale_lsxa(const Family& f, std::string* why) const {
    const double h = resolution;
    const double span = diameter(SubsetMask::full(window.size)) * 2 + 4 * h;
    for (const auto& a : excluded) {
        // Distances of each member to this boundary point.
        std::vector<std::pair<double, double>> range;   // (min, max) per member
        range.reserve(f.size());
        for (const auto& m : f.members) {
            double lo = kInf, hi = 0;
            for (auto i : m) {
                auto c = label_of(i);
                double v = 0;
                for (int d = 0; d < window.dim; ++d) v += std::abs(c[d] - a[d]);
                v *= resolution;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            range.emplace_back(lo, hi);
        }
        for (double r = 4 * h; r <= span; r *= 2) {
            bool found = false;
            for (double rp = h; rp <= r + kTau && !found; rp *= 2) {
                bool ok = true;
                for (const auto& [lo, hi] : range)
                    if (lo <= rp + kTau && hi > r + kTau) { ok = false; break; }
                found = ok;
            }
            if (!found) {
                if (why) *why = "no shrinking neighbourhood works at radius " + std::to_string(r);
                return false;
            }
        }
    }
    if (why) *why = "shrinks toward every boundary point";
    return true;
}

bool SpacePresentation::is_scale_wedge(const Family& f, std::string* why) const {
    const double m = max_point_star_card(f);
    if (m > ulf_bound + kTau) {
        if (why) *why = "locality bound " + std::to_string(static_cast<long long>(m)) +
                        " exceeds " + std::to_string(static_cast<long long>(ulf_bound));
        return false;
    }
    SubsetMask diag = wedge_a_ | wedge_b_;
    for (auto idx : metric_idx_) {
        SubsetMask near = star_set(diag, ladder_[idx]);
        for (const auto& mem : f.members) {
            bool meets = false;
            for (auto i : mem)
                if (near.test(i)) { meets = true; break; }
            if (meets && indices_diameter(*this, mem) > cutoff + kTau) {
                if (why) *why = "member near the diagonals exceeds metric bound at " +
                                ladder_[idx].tag;
                return false;
            }
        }
    }
    if (why) *why = "uniformly locally finite; metrically bounded near the diagonals";
    return true;
}

bool SpacePresentation::is_scale(const Family& fam, std::string* why) const {
    if (fam.universe != window.size) throw std::invalid_argument("is_scale: window mismatch");
    switch (kind) {
        case SpaceKind::Metric: return is_scale_metric(fam, why);
        case SpaceKind::C0: return is_scale_c0(fam, why);
        case SpaceKind::Group: return is_scale_group(fam, why);
        case SpaceKind::MaxUlf: return is_scale_maxulf(fam, why);
        case SpaceKind::Lsxa: return is_scale_lsxa(fam, why);
        case SpaceKind::HalfPlaneNonNormal: return is_scale_wedge(fam, why);
    }
    return false;
}

// --------------------------------------------------------------------------
// construction
// --------------------------------------------------------------------------

void SpacePresentation::finalize() {
    if (window.size == 0) throw std::invalid_argument("presentation: empty window");
    if (window.labeled()) {
        for (std::uint32_t i = 0; i < window.size; ++i) {
            if (!coord_index_.emplace(pack(label_of(i)), i).second)
                throw std::invalid_argument("presentation: duplicate point labels");
        }
    }
    if (ulf_bound <= 0) ulf_bound = cutoff;

    if (window.size > 1) {
        const double span = kind == SpaceKind::MaxUlf
                                ? static_cast<double>(window.size)
                                : diameter(SubsetMask::full(window.size));
        if (cutoff >= span - kTau)
            throw std::invalid_argument(
                "presentation: the cutoff must stay below the window diameter");
    }

    // Default ladder parameters: doubling generators under the cutoff, capped
    // so materialized ball covers stay small.
    if (ladder_params.empty()) {
        switch (kind) {
            case SpaceKind::Lsxa:
                ladder_params = {0.125, 0.25, 0.5};
                break;
            case SpaceKind::C0:
                for (double r = 1; 4 * r <= std::max(4.0, cutoff) && ladder_params.size() < 6; r *= 2)
                    ladder_params.push_back(r);
                break;
            default:
                for (double r = 1; r <= cutoff && ladder_params.size() < 6; r *= 2) {
                    const double est = static_cast<double>(window.size) *
                                       std::pow(2 * r + 1, std::max(window.dim, 1));
                    if (est > 2e7 && !ladder_params.empty()) break;
                    ladder_params.push_back(r);
                }
                break;
        }
    }

    ladder_.clear();
    metric_idx_.clear();
    switch (kind) {
        case SpaceKind::Metric:
        case SpaceKind::Group:
            for (double r : ladder_params) {
                metric_idx_.push_back(ladder_.size());
                ladder_.push_back(ball_cover(r, "balls-" + std::to_string(r)));
            }
            break;
        case SpaceKind::C0:
            for (double r : ladder_params) {
                metric_idx_.push_back(ladder_.size());
                ladder_.push_back(c0_decay_cover(r));
            }
            break;
        case SpaceKind::MaxUlf:
            for (double m : ladder_params)
                ladder_.push_back(ulf_block_family(static_cast<std::size_t>(std::max(1.0, m))));
            break;
        case SpaceKind::Lsxa:
            for (double alpha : ladder_params) {
                Family fam(window.size, "half-gap-" + std::to_string(alpha));
                for (std::uint32_t i = 0; i < window.size; ++i)
                    fam.members.push_back(ball(i, lsxa_distance_to_excluded(i) * alpha).to_indices());
                ladder_.push_back(std::move(fam));
            }
            break;
        case SpaceKind::HalfPlaneNonNormal: {
            wedge_a_ = SubsetMask(window.size);
            wedge_b_ = SubsetMask(window.size);
            for (std::uint32_t i = 0; i < window.size; ++i) {
                auto c = label_of(i);
                if (c[0] > 0 && c[0] == c[1]) wedge_a_.set(i);
                if (c[0] < 0 && -c[0] == c[1]) wedge_b_.set(i);
            }
            for (double r : ladder_params) {
                metric_idx_.push_back(ladder_.size());
                ladder_.push_back(ball_cover(r, "balls-" + std::to_string(r)));
            }
            for (double s : slopes) ladder_.push_back(wedge_pair_family(s));
            break;
        }
    }

    build_components();

    // Wedge locality bound: at least what the presentation's own ball covers
    // need at this window.
    if (kind == SpaceKind::HalfPlaneNonNormal) {
        double need = cutoff;
        for (auto idx : metric_idx_) need = std::max(need, max_point_star_card(ladder_[idx]));
        ulf_bound = std::max(ulf_bound, need);
    }

    for (const auto& fam : ladder_) {
        std::string why;
        if (!is_scale(fam, &why))
            throw std::invalid_argument("presentation: ladder entry " + fam.tag +
                                        " fails the scale test: " + why);
    }
}

SpacePresentation SpacePresentation::metric_points(std::vector<std::vector<int>> labels,
                                                   double cutoff, std::vector<double> radii,
                                                   MetricType mt, double resolution) {
    if (labels.empty()) throw std::invalid_argument("metric_points: no points");
    const int dim = static_cast<int>(labels.front().size());
    std::vector<int> flat;
    flat.reserve(labels.size() * dim);
    for (const auto& l : labels) {
        if (static_cast<int>(l.size()) != dim)
            throw std::invalid_argument("metric_points: label arity mismatch");
        flat.insert(flat.end(), l.begin(), l.end());
    }
    SpacePresentation p;
    p.kind = SpaceKind::Metric;
    p.window = Window(labels.size(), dim, std::move(flat));
    p.cutoff = cutoff;
    p.metric_type = mt;
    p.resolution = resolution;
    p.ladder_params = std::move(radii);
    p.finalize();
    return p;
}

SpacePresentation SpacePresentation::metric_line(int lo, int hi, double cutoff,
                                                 std::vector<double> radii) {
    std::vector<std::vector<int>> labels;
    for (int x = lo; x <= hi; ++x) labels.push_back({x});
    return metric_points(std::move(labels), cutoff, std::move(radii));
}

SpacePresentation SpacePresentation::metric_box(int x0, int x1, int y0, int y1, double cutoff,
                                                std::vector<double> radii) {
    std::vector<std::vector<int>> labels;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) labels.push_back({x, y});
    return metric_points(std::move(labels), cutoff, std::move(radii));
}

SpacePresentation SpacePresentation::c0_line(int lo, int hi, double cutoff,
                                             std::vector<double> radii, std::size_t) {
    std::vector<std::vector<int>> labels;
    for (int x = lo; x <= hi; ++x) labels.push_back({x});
    SpacePresentation p;
    p.kind = SpaceKind::C0;
    const int dim = 1;
    std::vector<int> flat;
    for (const auto& l : labels) flat.insert(flat.end(), l.begin(), l.end());
    p.window = Window(labels.size(), dim, std::move(flat));
    p.cutoff = cutoff;
    p.ladder_params = std::move(radii);
    p.finalize();
    return p;
}

SpacePresentation SpacePresentation::group(std::vector<std::array<int, 3>> gens, int dim,
                                           int radius, double cutoff,
                                           std::vector<double> radii) {
    for (const auto& g : gens) {
        if (g == std::array<int, 3>{0, 0, 0}) continue;
        if (std::find(gens.begin(), gens.end(),
                      std::array<int, 3>{-g[0], -g[1], -g[2]}) == gens.end())
            throw std::invalid_argument("group: generating set must be symmetric");
    }
    SpacePresentation p;
    p.kind = SpaceKind::Group;
    p.metric_type = MetricType::Word;
    p.cutoff = cutoff;
    p.generators = gens;
    p.group_radius = radius;
    p.ladder_params = std::move(radii);

    // Breadth-first word-length enumeration out to twice the window radius
    // (plus generator reach), so differences of window elements resolve.
    const int ext = 2 * radius + 2;
    std::deque<std::array<int, 3>> queue;
    std::vector<std::array<int, 3>> ball_elems;
    p.word_len_[pack({0, 0, 0})] = 0;
    queue.push_back({0, 0, 0});
    ball_elems.push_back({0, 0, 0});
    while (!queue.empty()) {
        auto c = queue.front();
        queue.pop_front();
        const int len = p.word_len_[pack(c)];
        if (len >= ext) continue;
        for (const auto& g : gens) {
            std::array<int, 3> n{c[0] + g[0], c[1] + g[1], c[2] + g[2]};
            if (p.word_len_.emplace(pack(n), len + 1).second) {
                queue.push_back(n);
                if (len + 1 <= radius) ball_elems.push_back(n);
            }
        }
    }
    std::sort(ball_elems.begin(), ball_elems.end(), [&](const auto& a, const auto& b) {
        const int la = p.word_len_.at(pack(a)), lb = p.word_len_.at(pack(b));
        return la != lb ? la < lb : a < b;
    });
    std::vector<int> flat;
    flat.reserve(ball_elems.size() * dim);
    for (const auto& c : ball_elems)
        for (int d = 0; d < dim; ++d) flat.push_back(c[d]);
    p.window = Window(ball_elems.size(), dim, std::move(flat));
    p.finalize();
    return p;
}

SpacePresentation SpacePresentation::max_ulf(std::size_t size, double cutoff,
                                             std::vector<double> block_sizes) {
    SpacePresentation p;
    p.kind = SpaceKind::MaxUlf;
    p.window = Window(size);
    p.cutoff = cutoff;
    p.ladder_params = std::move(block_sizes);
    p.finalize();
    return p;
}

SpacePresentation SpacePresentation::lsxa_grid(std::vector<std::vector<int>> labels,
                                               std::vector<std::array<int, 3>> excl,
                                               double resolution, double cutoff,
                                               std::vector<double> alphas) {
    if (labels.empty())
        throw std::invalid_argument("lsxa: excluded set covers the window");
    const int dim = static_cast<int>(labels.front().size());
    std::vector<int> flat;
    for (const auto& l : labels) {
        if (static_cast<int>(l.size()) != dim)
            throw std::invalid_argument("lsxa: label arity mismatch");
        flat.insert(flat.end(), l.begin(), l.end());
    }
    SpacePresentation p;
    p.kind = SpaceKind::Lsxa;
    p.window = Window(labels.size(), dim, std::move(flat));
    p.cutoff = cutoff;
    p.resolution = resolution;
    p.closure_radius = resolution;
    p.excluded = std::move(excl);
    if (p.excluded.empty()) throw std::invalid_argument("lsxa: boundary set is empty");
    p.ladder_params = std::move(alphas);
    p.finalize();
    return p;
}

SpacePresentation SpacePresentation::half_plane_wedge(int y_max, double cutoff,
                                                      std::vector<double> radii,
                                                      std::vector<double> slopes) {
    if (y_max < 1) throw std::invalid_argument("wedge: y_max must be >= 1");
    std::vector<int> flat;
    std::size_t n = 0;
    for (int y = 1; y <= y_max; ++y)
        for (int x = -y; x <= y; ++x) { flat.push_back(x); flat.push_back(y); ++n; }
    SpacePresentation p;
    p.kind = SpaceKind::HalfPlaneNonNormal;
    p.window = Window(n, 2, std::move(flat));
    p.cutoff = cutoff;
    p.y_max = y_max;
    p.slopes = std::move(slopes);
    p.ladder_params = std::move(radii);
    p.finalize();
    return p;
}

}  // namespace coarsekit
