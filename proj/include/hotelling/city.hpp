#pragma once

// The linear city [0,1] and vendor location profiles.
//
// A Profile is a weakly sorted vector x_1 <= ... <= x_n of locations in
// [0,1]; vendor indices are 1-based throughout the public interface. An
// UnsortedLocation carries the same data without the ordering requirement
// (the natural state after a single vendor deviates). Interval lengths
// I_0..I_n and the decomposition into blocks of co-located vendors are the
// two derived views everything downstream is written against.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hotelling {

namespace detail {

inline void require_in_unit_interval(const std::vector<Rat>& xs) {
    if (xs.empty())
        throw std::invalid_argument("profile: needs at least one vendor");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < Rat(0) || Rat(1) < xs[i])
            throw std::invalid_argument("profile: location " + to_string(xs[i]) +
                                        " outside [0,1]");
    }
}

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

} // namespace detail

/// Locations of the n vendors in no particular order.
class UnsortedLocation {
public:
    explicit UnsortedLocation(std::vector<Rat> xs) : xs_(std::move(xs)) {
        detail::require_in_unit_interval(xs_);
    }

    int n() const { return static_cast<int>(xs_.size()); }

    /// Location of vendor k, 1-based.
    const Rat& position(int k) const {
        if (k < 1 || k > n())
            throw std::out_of_range("vendor index " + std::to_string(k) +
                                    " not in 1.." + std::to_string(n()));
        return xs_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<Rat>& positions() const { return xs_; }

    friend bool operator==(const UnsortedLocation&, const UnsortedLocation&) = default;

private:
    std::vector<Rat> xs_;
};

/// Weakly sorted locations x_1 <= ... <= x_n.
class Profile {
public:
    explicit Profile(std::vector<Rat> xs) : xs_(std::move(xs)) {
        detail::require_in_unit_interval(xs_);
        if (!std::is_sorted(xs_.begin(), xs_.end()))
            throw std::invalid_argument("profile: locations must be weakly increasing");
    }

    int n() const { return static_cast<int>(xs_.size()); }

    /// Location of vendor k, 1-based.
    const Rat& position(int k) const {
        if (k < 1 || k > n())
            throw std::out_of_range("vendor index " + std::to_string(k) +
                                    " not in 1.." + std::to_string(n()));
        return xs_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<Rat>& positions() const { return xs_; }

    UnsortedLocation as_unsorted() const { return UnsortedLocation(xs_); }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Rat> xs_;
};

inline Profile make_profile(std::vector<Rat> xs) { return Profile(std::move(xs)); }

/// Sorts arbitrary locations into a Profile.
inline Profile make_profile(const UnsortedLocation& loc) {
    std::vector<Rat> xs = loc.positions();
    std::sort(xs.begin(), xs.end());
    return Profile(std::move(xs));
}

/// The n+1 gap lengths I_0..I_n cut out of [0,1] by a sorted profile:
/// I_0 = x_1, I_j = x_{j+1} - x_j for 1 <= j <= n-1, I_n = 1 - x_n.
class Intervals {
public:
    explicit Intervals(const Profile& p) {
        lengths_.reserve(static_cast<std::size_t>(p.n()) + 1);
        lengths_.push_back(p.position(1));
        for (int k = 1; k < p.n(); ++k)
            lengths_.push_back(p.position(k + 1) - p.position(k));
        lengths_.push_back(Rat(1) - p.position(p.n()));
    }

    int n() const { return static_cast<int>(lengths_.size()) - 1; }

    /// Length of I_j, 0 <= j <= n.
    const Rat& length(int j) const {
        if (j < 0 || j > n())
            throw std::out_of_range("interval index " + std::to_string(j) +
                                    " not in 0.." + std::to_string(n()));
        return lengths_[static_cast<std::size_t>(j)];
    }

    const std::vector<Rat>& lengths() const { return lengths_; }

private:
    std::vector<Rat> lengths_;
};

inline Intervals intervals(const Profile& p) { return Intervals(p); }

/// A maximal group of vendors sharing one location.
struct Block {
    Rat position;
    std::vector<int> members; // 1-based vendor indices, ascending

    int multiplicity() const { return static_cast<int>(members.size()); }
};

/// The profile's blocks in increasing order of position. For a sorted
/// profile each block's member list is a contiguous index range; for
/// unsorted input the members are whichever vendors sit at that point.
class BlockDecomposition {
public:
    explicit BlockDecomposition(const Profile& p) {
        for (int k = 1; k <= p.n(); ++k) {
            if (!blocks_.empty() && blocks_.back().position == p.position(k))
                blocks_.back().members.push_back(k);
            else
                blocks_.push_back(Block{p.position(k), {k}});
        }
    }

    explicit BlockDecomposition(const UnsortedLocation& loc) {
        std::vector<int> order(static_cast<std::size_t>(loc.n()));
        std::iota(order.begin(), order.end(), 1);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return loc.position(a) < loc.position(b);
        });
        for (int k : order) {
            if (!blocks_.empty() && blocks_.back().position == loc.position(k))
                blocks_.back().members.push_back(k);
            else
                blocks_.push_back(Block{loc.position(k), {k}});
        }
    }

    int count() const { return static_cast<int>(blocks_.size()); }

    /// Block b, 0-based, leftmost first.
    const Block& block(int b) const {
        if (b < 0 || b >= count())
            throw std::out_of_range("block index " + std::to_string(b) +
                                    " not in 0.." + std::to_string(count() - 1));
        return blocks_[static_cast<std::size_t>(b)];
    }

    auto begin() const { return blocks_.begin(); }
    auto end() const { return blocks_.end(); }

    /// Largest number of vendors sharing a single point.
    int max_multiplicity() const {
        int m = 0;
        for (const Block& b : blocks_)
            m = std::max(m, b.multiplicity());
        return m;
    }

private:
    std::vector<Block> blocks_;
};

inline BlockDecomposition blocks(const Profile& p) { return BlockDecomposition(p); }
inline BlockDecomposition blocks(const UnsortedLocation& loc) { return BlockDecomposition(loc); }

/// Relocates vendor k to t, leaving everyone else in place. The result is
/// generally no longer sorted.
inline UnsortedLocation move_vendor(const Profile& p, int k, const Rat& t) {
    if (t < Rat(0) || Rat(1) < t)
        throw std::invalid_argument("move_vendor: target " + to_string(t) +
                                    " outside [0,1]");
    std::vector<Rat> xs = p.positions();
    xs.at(static_cast<std::size_t>(k - 1)) = t; // at() re-checks the index
    return UnsortedLocation(std::move(xs));
}

/// Reflects the city around 1/2: vendor k moves to 1 - x_{n+1-k}.
inline Profile mirror(const Profile& p) {
    std::vector<Rat> xs;
    xs.reserve(static_cast<std::size_t>(p.n()));
    for (int k = p.n(); k >= 1; --k)
        xs.push_back(Rat(1) - p.position(k));
    return Profile(std::move(xs));
}

} // namespace hotelling
