#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarsekit/core_sets.hpp"
#include "coarsekit/window.hpp"

namespace coarsekit {

inline constexpr double kTau = 1e-9;   // comparison tolerance for real-valued data

enum class SpaceKind { Metric, C0, Group, MaxUlf, Lsxa, HalfPlaneNonNormal };

enum class MetricType { L1, L2, Linf, Word };

std::string to_string(SpaceKind k);

/// A windowed presentation of a large-scale structure: the finite ground set,
/// a boundedness cutoff, and a finite ladder of scales standing in for the
/// full directed family of uniformly bounded covers. Immutable once built.
class SpacePresentation {
public:
    SpaceKind kind;
    Window window;
    double cutoff = 0;
    MetricType metric_type = MetricType::L1;
    double resolution = 1.0;        // label unit -> distance unit
    double closure_radius = 0.0;    // 0 = discrete closure
    std::vector<double> ladder_params;
    std::vector<double> eps_grid = {0.5, 0.25, 0.1, 0.05};

    // Group presentations
    std::vector<std::array<int, 3>> generators;
    int group_radius = 0;

    // LSXA presentations: the excluded boundary set, as ambient grid labels.
    std::vector<std::array<int, 3>> excluded;

    // Half-plane wedge presentations
    int y_max = 0;
    std::vector<double> slopes = {0.5};
    double ulf_bound = 0;           // defaults to cutoff

    // --- factories ------------------------------------------------------
    static SpacePresentation metric_points(std::vector<std::vector<int>> labels,
                                           double cutoff,
                                           std::vector<double> radii = {},
                                           MetricType mt = MetricType::L1,
                                           double resolution = 1.0);
    static SpacePresentation metric_line(int lo, int hi, double cutoff,
                                         std::vector<double> radii = {});
    static SpacePresentation metric_box(int x0, int x1, int y0, int y1, double cutoff,
                                        std::vector<double> radii = {});
    static SpacePresentation c0_line(int lo, int hi, double cutoff,
                                     std::vector<double> radii = {},
                                     std::size_t origin_index = 0);
    static SpacePresentation group(std::vector<std::array<int, 3>> gens, int dim,
                                   int radius, double cutoff,
                                   std::vector<double> radii = {});
    static SpacePresentation max_ulf(std::size_t size, double cutoff,
                                     std::vector<double> block_sizes = {});
    static SpacePresentation lsxa_grid(std::vector<std::vector<int>> labels,
                                       std::vector<std::array<int, 3>> excluded,
                                       double resolution, double cutoff,
                                       std::vector<double> alphas = {});
    static SpacePresentation half_plane_wedge(int y_max, double cutoff,
                                              std::vector<double> radii = {},
                                              std::vector<double> slopes = {0.5});

    // --- metric and closure oracles --------------------------------------
    bool has_metric() const { return kind != SpaceKind::MaxUlf; }
    double distance(std::size_t i, std::size_t j) const;
    double distance_to(std::size_t i, const SubsetMask& s) const;   // +inf when empty
    double diameter(const SubsetMask& s) const;
    double set_gap(const SubsetMask& a, const SubsetMask& b) const; // min cross distance
    SubsetMask closure(const SubsetMask& s) const;
    ClosureOracle closure_oracle() const;
    SubsetMask ball(std::size_t center, double radius) const;

    // --- boundedness -----------------------------------------------------
    bool is_bounded(const SubsetMask& k) const;
    /// Bounded intersection with every coarse component of the window.
    bool weakly_bounded(const SubsetMask& k) const;
    const Partition& coarse_components() const { return components_; }
    /// True when every subset of the window is weakly bounded (each component
    /// is itself bounded); the window then presents a coarsely trivial space.
    bool coarsely_trivial() const { return all_weakly_bounded_; }
    double lsxa_distance_to_excluded(std::size_t i) const;

    // --- scales ----------------------------------------------------------
    const std::vector<Family>& ladder() const { return ladder_; }
    /// Indices into ladder() of the plain metric ball covers (the full ladder
    /// for metric kinds; the sub-ladder below the exotic scales for the wedge).
    const std::vector<std::size_t>& metric_ladder_indices() const { return metric_idx_; }
    Family metric_scale(double radius) const;
    Family lsxa_default_scale() const;
    bool is_scale(const Family& fam, std::string* why = nullptr) const;

    // --- group structure ---------------------------------------------------
    /// st(E, G(F)) computed as the product set E·F^{-1}·F, clipped to the window.
    SubsetMask group_star(const SubsetMask& e, const SubsetMask& f) const;
    /// Word length of a coordinate vector (|coords| within twice the window
    /// radius plus generator reach); nullopt beyond the enumerated region.
    std::optional<int> word_length(std::array<int, 3> c) const;
    std::optional<std::uint32_t> index_of_label(std::array<int, 3> c) const;
    int dim() const { return window.dim; }
    std::array<int, 3> label_of(std::size_t i) const;

    // --- wedge structure ---------------------------------------------------
    const SubsetMask& wedge_a() const { return wedge_a_; }
    const SubsetMask& wedge_b() const { return wedge_b_; }
    int wedge_row(std::size_t i) const { return label_of(i)[1]; }

    void finalize();   // builds ladder, components, caches; called by factories

private:
    Family ball_cover(double radius, const std::string& tag) const;
    Family c0_decay_cover(double radius) const;
    Family wedge_pair_family(double slope) const;
    Family ulf_block_family(std::size_t block) const;
    void build_neighbor_buckets(double cell) const;
    void build_components();
    bool is_scale_metric(const Family& f, std::string* why) const;
    bool is_scale_c0(const Family& f, std::string* why) const;
    bool is_scale_group(const Family& f, std::string* why) const;
    bool is_scale_maxulf(const Family& f, std::string* why) const;
    bool is_scale_lsxa(const Family& f, std::string* why) const;
    bool is_scale_wedge(const Family& f, std::string* why) const;
    double max_point_star_card(const Family& f) const;

    std::vector<Family> ladder_;
    std::vector<std::size_t> metric_idx_;
    Partition components_;
    bool all_weakly_bounded_ = false;
    SubsetMask wedge_a_, wedge_b_;

    std::unordered_map<std::int64_t, std::uint32_t> coord_index_;
    std::unordered_map<std::int64_t, int> word_len_;   // extended enumeration

    mutable double bucket_cell_ = -1;
    mutable std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace coarsekit
