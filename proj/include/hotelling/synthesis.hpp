#pragma once

// Constructing equilibria.
//
// For n >= 4 every equilibrium is described by its gap lengths: with
// a = I_0 the outer gaps are (a, 0, 2a, ..., 2a, 0, a), and the middle
// lengths I_3..I_{n-3} range freely over [0, 2a] subject to consecutive
// pairs summing to at least 2a and everything adding up to 1. A
// LengthSystem holds exactly that data, validated on construction against
// the same clause checker the verifier uses.
//
// canonical_equilibrium picks the unique member with all middle gaps equal
// to 2a (so a = 1/(2n-4)); sample_equilibria draws further members with
// every coordinate kept on an exact rational grid of denominator 840.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "city.hpp"
#include "equilibrium.hpp"
#include "rational.hpp"

namespace hotelling {

/// Gap lengths of an n >= 4 equilibrium: the edge value a plus the free
/// middle lengths I_3..I_{n-3} (none for n = 4 or 5). Construction checks
/// the full interval conditions and that the lengths fill [0,1] exactly.
class LengthSystem {
public:
    LengthSystem(int n, Rat edge, std::vector<Rat> middle)
        : n_(n), edge_(std::move(edge)), middle_(std::move(middle)) {
        if (n_ < 4)
            throw std::invalid_argument("length system: needs n >= 4");
        const int want = n_ >= 5 ? n_ - 5 : 0;
        if (static_cast<int>(middle_.size()) != want)
            throw std::invalid_argument("length system: expected " + std::to_string(want) +
                                        " middle lengths, got " +
                                        std::to_string(middle_.size()));
        for (const Rat& v : middle_)
            if (v < Rat(0))
                throw std::invalid_argument("length system: negative gap length " +
                                            to_string(v));

        std::vector<Rat> L = full_lengths();
        Rat sum(0);
        for (const Rat& l : L) sum += l;
        if (sum != Rat(1))
            throw std::invalid_argument("length system: gap lengths sum to " +
                                        to_string(sum) + ", not 1");
        std::vector<Finding> bad;
        detail::interval_condition_findings(L, bad);
        if (!bad.empty())
            throw std::invalid_argument("length system: " + bad.front().detail);
    }

    int n() const { return n_; }
    const Rat& edge() const { return edge_; }
    const std::vector<Rat>& middle() const { return middle_; }

    /// The full gap vector I_0..I_n.
    std::vector<Rat> full_lengths() const {
        std::vector<Rat> L;
        L.reserve(static_cast<std::size_t>(n_) + 1);
        const Rat twice = Rat(2) * edge_;
        L.push_back(edge_);
        L.push_back(Rat(0));
        L.push_back(twice);
        if (n_ >= 5) {
            for (const Rat& v : middle_) L.push_back(v);
            L.push_back(twice);
        }
        L.push_back(Rat(0));
        L.push_back(edge_);
        return L;
    }

private:
    int n_;
    Rat edge_;
    std::vector<Rat> middle_;
};

/// Accumulates the gap lengths into vendor positions.
inline Profile lengths_to_profile(const LengthSystem& ls) {
    std::vector<Rat> L = ls.full_lengths();
    std::vector<Rat> xs;
    xs.reserve(static_cast<std::size_t>(ls.n()));
    Rat x(0);
    for (int k = 0; k < ls.n(); ++k) {
        x += L[static_cast<std::size_t>(k)];
        xs.push_back(x);
    }
    return Profile(std::move(xs));
}

/// Closed interval of edge values a for which some n-vendor equilibrium
/// has I_0 = a. The lower end makes all middle gaps hit their cap 2a; the
/// upper end packs the minimum-sum alternating pattern 2a, 0, 2a, ...
inline std::pair<Rat, Rat> feasible_edge_range(int n) {
    if (n < 4)
        throw std::invalid_argument("feasible edge range: needs n >= 4");
    Rat lo(1, 2 * static_cast<std::int64_t>(n) - 4);
    Rat hi = (n == 4) ? Rat(1, 4) : Rat(1, 6 + 2 * ((static_cast<std::int64_t>(n) - 5) / 2));
    return {lo, hi};
}

/// The equilibrium with every middle gap at its cap: a = 1/(2n-4). Also
/// handles the two small cases: n = 2 gives (1/2, 1/2) and n = 3 throws,
/// since no three-vendor equilibrium exists.
inline Profile canonical_equilibrium(int n) {
    if (n == 2)
        return Profile({Rat(1, 2), Rat(1, 2)});
    if (n == 3)
        throw std::invalid_argument("no equilibrium exists for n = 3");
    if (n < 2)
        throw std::invalid_argument("canonical equilibrium: needs n >= 2");
    Rat a(1, 2 * static_cast<std::int64_t>(n) - 4);
    std::vector<Rat> middle(static_cast<std::size_t>(n >= 5 ? n - 5 : 0), Rat(2) * a);
    return lengths_to_profile(LengthSystem(n, a, std::move(middle)));
}

namespace detail {

// Deterministic across platforms, unlike std::uniform_int_distribution.
inline std::uint64_t bounded_draw(std::mt19937_64& g, std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(g()) * bound) >> 64);
}

inline std::int64_t draw_in(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    bounded_draw(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace detail

/// Draws `count` equilibria for n vendors, every coordinate an exact
/// multiple of 1/840. Draws are independent, so repeats can occur; for
/// n = 2, 4, 5 the equilibrium is unique and all samples coincide.
inline std::vector<Profile> sample_equilibria(int n, int count, std::uint64_t seed) {
    if (count < 0)
        throw std::invalid_argument("sample count must be nonnegative");
    if (n == 3)
        throw std::invalid_argument("no equilibrium exists for n = 3");
    if (n < 2)
        throw std::invalid_argument("sampling needs n >= 2");

    std::vector<Profile> out;
    out.reserve(static_cast<std::size_t>(count));
    if (n == 2) {
        for (int i = 0; i < count; ++i) out.push_back(canonical_equilibrium(2));
        return out;
    }

    constexpr std::int64_t D = 840; // rich in divisors, so the edge grid is dense
    auto [lo, hi] = feasible_edge_range(n);
    // a = t/D with lo <= a <= hi
    std::int64_t t_min = (D * lo.num() + lo.den() - 1) / lo.den();
    std::int64_t t_max = (D * hi.num()) / hi.den();
    if (t_min > t_max)
        throw std::runtime_error("sampling grid of denominator 840 misses the feasible "
                                 "edge range for n = " + std::to_string(n));

    std::mt19937_64 rng(seed);
    const int p = n >= 5 ? n - 5 : 0;
    long attempts_left = 1000L + 200L * count;
    while (static_cast<int>(out.size()) < count) {
        if (--attempts_left < 0)
            throw std::runtime_error("sampling failed to hit the equilibrium family; "
                                     "try another seed");
        std::int64_t t = detail::draw_in(rng, t_min, t_max);
        // Middle gaps in units of 1/840: each in [0, 2t], consecutive sums
        // >= 2t, total fixed by the six outer units (four when n = 4).
        std::int64_t budget = D - (n == 4 ? 4 : 6) * t;
        std::vector<std::int64_t> u(static_cast<std::size_t>(p), 0);
        bool ok = budget >= 0 && (p > 0 || budget == 0);
        for (int i = 0; ok && i < p; ++i) {
            std::int64_t remaining_slots = p - 1 - i;
            if (remaining_slots == 0) {
                u[static_cast<std::size_t>(i)] = budget;
                std::int64_t v = budget;
                ok = v >= 0 && v <= 2 * t &&
                     (i == 0 || u[static_cast<std::size_t>(i - 1)] + v >= 2 * t);
                budget = 0;
            } else {
                std::int64_t floor_v = budget - 2 * t * remaining_slots;
                if (floor_v < 0) floor_v = 0;
                if (i > 0 && 2 * t - u[static_cast<std::size_t>(i - 1)] > floor_v)
                    floor_v = 2 * t - u[static_cast<std::size_t>(i - 1)];
                std::int64_t cap_v = 2 * t < budget ? 2 * t : budget;
                if (floor_v > cap_v) {
                    ok = false;
                    break;
                }
                std::int64_t v = detail::draw_in(rng, floor_v, cap_v);
                u[static_cast<std::size_t>(i)] = v;
                budget -= v;
            }
        }
        if (!ok) continue;

        std::vector<Rat> middle;
        middle.reserve(static_cast<std::size_t>(p));
        for (std::int64_t v : u) middle.emplace_back(v, D);
        try {
            out.push_back(lengths_to_profile(LengthSystem(n, Rat(t, D), std::move(middle))));
        } catch (const std::invalid_argument&) {
            continue; // a rejected draw; try again
        }
    }
    return out;
}

} // namespace hotelling
