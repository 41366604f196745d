#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace coarsekit {

/// A subset of a fixed finite ground window [0, size), packed into 64-bit
/// words. All set algebra is word-at-a-time; operands must share a universe.
class SubsetMask {
public:
    SubsetMask() = default;

    explicit SubsetMask(std::size_t universe)
        : size_(universe), words_((universe + 63) / 64, 0) {}

    static SubsetMask full(std::size_t universe) {
        SubsetMask m(universe);
        for (auto& w : m.words_) w = ~std::uint64_t{0};
        m.trim();
        return m;
    }

    template <typename Range>
    static SubsetMask of(std::size_t universe, const Range& indices) {
        SubsetMask m(universe);
        for (auto i : indices) m.set(static_cast<std::size_t>(i));
        return m;
    }

    std::size_t universe() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        if (i >= size_) throw std::out_of_range("SubsetMask::set: index beyond window");
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void clear() { for (auto& w : words_) w = 0; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    bool subset_of(const SubsetMask& other) const {
        check(other);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }

    bool intersects(const SubsetMask& other) const {
        check(other);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & other.words_[k]) return true;
        return false;
    }

    SubsetMask& operator|=(const SubsetMask& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    SubsetMask& operator&=(const SubsetMask& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    /// Set difference: removes o's elements.
    SubsetMask& operator-=(const SubsetMask& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
    friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
    friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

    SubsetMask complement() const {
        SubsetMask m(size_);
        for (std::size_t k = 0; k < words_.size(); ++k) m.words_[k] = ~words_[k];
        m.trim();
        return m;
    }

    bool operator==(const SubsetMask& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }
    bool operator!=(const SubsetMask& o) const { return !(*this == o); }

    /// Applies fn to each member index, in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int b = std::countr_zero(w);
                fn(k * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
        return out;
    }

private:
    void check(const SubsetMask& o) const {
        if (size_ != o.size_)
            throw std::invalid_argument("SubsetMask: window mismatch");
    }

    void trim() {
        const std::size_t tail = size_ & 63;
        if (tail && !words_.empty())
            words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace coarsekit
