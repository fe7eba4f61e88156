#pragma once

// Vendor payoffs.
//
// Customers are uniform on [0,1] and walk to the nearest vendor, splitting
// equally when several are nearest. Two independent evaluations are
// provided on purpose:
//
//   payoff_closed_form  computes each vendor's share from the block
//                       decomposition (each block serves everything from
//                       the midpoint toward its left neighbour, or 0, up
//                       to the midpoint toward its right neighbour, or 1,
//                       divided equally among its members);
//
//   payoff_numeric      evaluates the defining integral of the customer
//                       density by an exact-rational midpoint rule and
//                       knows nothing about blocks.
//
// The density of one vendor is constant except at the two edges of its
// catchment, so the midpoint rule with M cells is off by at most 2/M;
// callers compare against the pinned bound n/M.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "city.hpp"
#include "rational.hpp"

namespace hotelling {

/// Vendors nearest to one customer location.
struct TieSet {
    std::vector<int> members; // 1-based vendor indices, ascending

    int size() const { return static_cast<int>(members.size()); }

    bool contains(int k) const {
        for (int m : members)
            if (m == k) return true;
        return false;
    }
};

namespace detail {

inline TieSet tie_set_impl(const std::vector<Rat>& xs, const Rat& y) {
    TieSet s;
    Rat best;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Rat d = abs(xs[i] - y);
        if (s.members.empty() || d < best) {
            best = d;
            s.members.clear();
            s.members.push_back(static_cast<int>(i) + 1);
        } else if (d == best) {
            s.members.push_back(static_cast<int>(i) + 1);
        }
    }
    return s;
}

inline void require_customer_in_city(const Rat& y) {
    if (y < Rat(0) || Rat(1) < y)
        throw std::invalid_argument("customer location " + to_string(y) +
                                    " outside [0,1]");
}

} // namespace detail

inline TieSet tie_set(const UnsortedLocation& loc, const Rat& y) {
    detail::require_customer_in_city(y);
    return detail::tie_set_impl(loc.positions(), y);
}

inline TieSet tie_set(const Profile& p, const Rat& y) {
    detail::require_customer_in_city(y);
    return detail::tie_set_impl(p.positions(), y);
}

/// Fraction of the customer at y served by vendor k: 1/|S| if k is among
/// the nearest vendors S, otherwise 0.
inline Rat density(const UnsortedLocation& loc, int k, const Rat& y) {
    if (k < 1 || k > loc.n())
        throw std::out_of_range("vendor index " + std::to_string(k) +
                                " not in 1.." + std::to_string(loc.n()));
    TieSet s = tie_set(loc, y);
    return s.contains(k) ? Rat(1, s.size()) : Rat(0);
}

inline Rat density(const Profile& p, int k, const Rat& y) {
    return density(p.as_unsorted(), k, y);
}

/// All n payoffs of one configuration; indexing is 1-based like vendors.
class PayoffVector {
public:
    explicit PayoffVector(std::vector<Rat> f) : f_(std::move(f)) {
        if (f_.empty())
            throw std::invalid_argument("payoff vector: needs at least one vendor");
    }

    int n() const { return static_cast<int>(f_.size()); }

    const Rat& value(int k) const {
        if (k < 1 || k > n())
            throw std::out_of_range("vendor index " + std::to_string(k) +
                                    " not in 1.." + std::to_string(n()));
        return f_[static_cast<std::size_t>(k - 1)];
    }

    const std::vector<Rat>& values() const { return f_; }

    Rat total() const {
        Rat t(0);
        for (const Rat& v : f_) t += v;
        return t;
    }

    friend bool operator==(const PayoffVector&, const PayoffVector&) = default;

private:
    std::vector<Rat> f_;
};

namespace detail {

inline PayoffVector payoff_from_blocks(const BlockDecomposition& bd, int n) {
    std::vector<Rat> f(static_cast<std::size_t>(n), Rat(0));
    for (int b = 0; b < bd.count(); ++b) {
        const Block& cur = bd.block(b);
        Rat left = (b == 0) ? Rat(0) : midpoint(bd.block(b - 1).position, cur.position);
        Rat right = (b == bd.count() - 1) ? Rat(1)
                                          : midpoint(cur.position, bd.block(b + 1).position);
        Rat share = (right - left) / Rat(cur.multiplicity());
        for (int k : cur.members)
            f[static_cast<std::size_t>(k - 1)] = share;
    }
    return PayoffVector(std::move(f));
}

} // namespace detail

inline PayoffVector payoff_closed_form(const Profile& p) {
    return detail::payoff_from_blocks(blocks(p), p.n());
}

inline PayoffVector payoff_closed_form(const UnsortedLocation& loc) {
    return detail::payoff_from_blocks(blocks(loc), loc.n());
}

/// Midpoint-rule value of vendor k's payoff integral with M cells,
/// computed exactly: (1/M) * sum over j of density at (2j+1)/(2M).
inline Rat payoff_numeric(const UnsortedLocation& loc, int k, std::int64_t cells) {
    if (cells < 1)
        throw std::invalid_argument("payoff_numeric: needs at least one cell");
    if (k < 1 || k > loc.n())
        throw std::out_of_range("vendor index " + std::to_string(k) +
                                " not in 1.." + std::to_string(loc.n()));
    Rat sum(0);
    for (std::int64_t j = 0; j < cells; ++j) {
        TieSet s = detail::tie_set_impl(loc.positions(), Rat(2 * j + 1, 2 * cells));
        if (s.contains(k))
            sum += Rat(1, s.size());
    }
    return sum / Rat(cells);
}

inline Rat payoff_numeric(const Profile& p, int k, std::int64_t cells) {
    return payoff_numeric(p.as_unsorted(), k, cells);
}

/// Same rule for every vendor at once, sharing one tie-set sweep per cell.
inline PayoffVector payoff_numeric_all(const UnsortedLocation& loc, std::int64_t cells) {
    if (cells < 1)
        throw std::invalid_argument("payoff_numeric: needs at least one cell");
    std::vector<Rat> sums(static_cast<std::size_t>(loc.n()), Rat(0));
    for (std::int64_t j = 0; j < cells; ++j) {
        TieSet s = detail::tie_set_impl(loc.positions(), Rat(2 * j + 1, 2 * cells));
        Rat share(1, s.size());
        for (int k : s.members)
            sums[static_cast<std::size_t>(k - 1)] += share;
    }
    for (Rat& v : sums)
        v /= Rat(cells);
    return PayoffVector(std::move(sums));
}

inline PayoffVector payoff_numeric_all(const Profile& p, std::int64_t cells) {
    return payoff_numeric_all(p.as_unsorted(), cells);
}

} // namespace hotelling
