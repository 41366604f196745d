#pragma once

#include <stdexcept>
#include <vector>

#include "coarsekit/bitset.hpp"
#include "coarsekit/spaces.hpp"

namespace coarsekit {

/// A real-valued map on the window with finitely many values, confined to a
/// closed interval.
struct StepFunction {
    std::vector<double> values;
    double lo = 0.0;
    double hi = 1.0;

    StepFunction() = default;
    StepFunction(std::size_t n, double value, double lo_, double hi_)
        : values(n, value), lo(lo_), hi(hi_) {
        validate();
    }
    StepFunction(std::vector<double> v, double lo_, double hi_)
        : values(std::move(v)), lo(lo_), hi(hi_) {
        validate();
    }

    std::size_t size() const { return values.size(); }

    void validate() const {
        if (hi < lo) throw std::invalid_argument("StepFunction: empty range");
        for (double v : values)
            if (v < lo - kTau || v > hi + kTau)
                throw std::invalid_argument("StepFunction: value out of range");
    }

    /// f^{-1}([lo, a]), optionally within a domain mask.
    SubsetMask preimage_leq(double a, const SubsetMask* domain = nullptr) const {
        SubsetMask m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] <= a + kTau && (!domain || domain->test(i))) m.set(i);
        return m;
    }

    /// f^{-1}([lo, b)), optionally within a domain mask.
    SubsetMask preimage_lt(double b, const SubsetMask* domain = nullptr) const {
        SubsetMask m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] < b - kTau && (!domain || domain->test(i))) m.set(i);
        return m;
    }

    /// Distinct values, ascending (tolerance-deduped).
    std::vector<double> distinct_values() const {
        std::vector<double> v = values;
        std::sort(v.begin(), v.end());
        std::vector<double> out;
        for (double x : v)
            if (out.empty() || x > out.back() + kTau) out.push_back(x);
        return out;
    }

    double image_diameter(const std::vector<std::uint32_t>& member) const {
        double mn = 0, mx = 0;
        bool first = true;
        for (auto i : member) {
            if (first) { mn = mx = values[i]; first = false; }
            else { mn = std::min(mn, values[i]); mx = std::max(mx, values[i]); }
        }
        return first ? 0.0 : mx - mn;
    }
};

/// Pointwise sum; the range is the interval sum.
StepFunction sum_functions(const StepFunction& f, const StepFunction& g);

}  // namespace coarsekit
