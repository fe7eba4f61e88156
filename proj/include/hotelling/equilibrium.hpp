#pragma once

// Equilibrium verification, two independent ways.
//
// Route one works from the definition: for each vendor, the supremum of
// the payoff over all unilateral relocations is computed exactly from a
// finite candidate set, and the profile is an equilibrium precisely when
// no vendor's supremum exceeds its current payoff. The candidate set is
// sound because a deviator's payoff, as a function of its new location t,
// is piecewise affine between the other vendors' positions: constant on
// interior gaps, increasing toward an occupied point when approaching it
// from an unoccupied outer gap, and takes separate values exactly at the
// occupied points themselves.
//
// Route two never looks at deviations at all: it decides equilibrium from
// the gap lengths I_0..I_n alone, via the interval conditions
//
//   n = 2:  both vendors at 1/2;
//   n = 3:  no equilibrium exists;
//   n >= 4: I_0 = I_n > 0, I_1 = I_{n-1} = 0, I_2 = 2*I_0, I_{n-2} = 2*I_n,
//           every I_j <= 2*I_0, and I_k + I_{k+1} >= 2*I_0 for 1 <= k <= n-2.
//
// cross_validate runs both routes and reports whether they agree; they
// must, so a disagreement always means an implementation defect.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "city.hpp"
#include "payoff.hpp"
#include "rational.hpp"

namespace hotelling {

/// An open gap along which deviation payoffs approach a supremum that no
/// point of the gap attains.
struct OpenLimit {
    Rat lo;
    Rat hi;
    enum class Approach { toward_hi, toward_lo } approach;
};

/// Exact deviation analysis for one vendor.
struct DeviationReport {
    int vendor = 0;              // 1-based
    Rat current;                 // payoff at the present location
    Rat sup;                     // supremum over all relocations in [0,1]
    bool attained = false;       // whether some relocation achieves sup
    std::optional<Rat> witness;  // smallest maximizing location, when attained
    std::optional<OpenLimit> limit; // the approach direction, when not attained

    /// A strictly better relocation exists. (When sup is unattained the
    /// payoffs still get arbitrarily close to it, so the strict inequality
    /// is the right test in both cases.)
    bool profitable() const { return current < sup; }
};

/// One concrete, machine-readable reason a check failed.
struct Finding {
    std::string code;    // stable identifier, e.g. "main2.pair_sum"
    int vendor = 0;      // 1-based vendor or interval index; 0 if not applicable
    std::string detail;  // human-readable explanation with exact values
    std::optional<Rat> deviation_point;   // profitable relocation, when relevant
    std::optional<Rat> deviation_payoff;  // its payoff
};

/// Outcome of one check: `holds` with an empty findings list, or a finding
/// per violation. `reports` is populated only by the definition-based
/// verifier.
struct Verdict {
    bool holds = false;
    std::vector<Finding> findings;
    std::vector<DeviationReport> reports;
};

namespace detail {

// The other vendors' distinct positions and how many sit at each.
struct ReducedCity {
    std::vector<Rat> points; // strictly increasing
    std::vector<int> mult;
};

inline ReducedCity reduce_without(const Profile& p, int k) {
    ReducedCity rc;
    for (int j = 1; j <= p.n(); ++j) {
        if (j == k) continue;
        if (!rc.points.empty() && rc.points.back() == p.position(j)) {
            ++rc.mult.back();
        } else {
            rc.points.push_back(p.position(j));
            rc.mult.push_back(1);
        }
    }
    return rc;
}

struct Candidate {
    Rat value;
    bool attained = false;
    Rat witness;          // meaningful iff attained
    OpenLimit limit{};    // meaningful iff !attained
};

// Deviation payoff candidates against a fixed set of opponents. Their
// domains cover [0,1], so the maximum candidate value is the supremum.
inline std::vector<Candidate> deviation_candidates(const ReducedCity& rc) {
    std::vector<Candidate> cs;
    const int m = static_cast<int>(rc.points.size());
    const Rat zero(0), one(1), two(2);

    if (rc.points.front() > zero) {
        // Outer gap [0, q_1): payoff (t + q_1)/2 climbs toward q_1.
        cs.push_back({rc.points.front(), false, {},
                      OpenLimit{zero, rc.points.front(), OpenLimit::Approach::toward_hi}});
        cs.push_back({rc.points.front() / two, true, zero, {}});
    }
    for (int i = 0; i + 1 < m; ++i) {
        // Interior gap (q_i, q_{i+1}): payoff is the constant half-gap.
        cs.push_back({(rc.points[static_cast<std::size_t>(i) + 1] -
                       rc.points[static_cast<std::size_t>(i)]) / two,
                      true,
                      midpoint(rc.points[static_cast<std::size_t>(i)],
                               rc.points[static_cast<std::size_t>(i) + 1]),
                      {}});
    }
    if (rc.points.back() < one) {
        // Outer gap (q_m, 1]: payoff 1 - (q_m + t)/2 climbs toward 1 - q_m.
        cs.push_back({one - rc.points.back(), false, {},
                      OpenLimit{rc.points.back(), one, OpenLimit::Approach::toward_lo}});
        cs.push_back({(one - rc.points.back()) / two, true, one, {}});
    }
    for (int i = 0; i < m; ++i) {
        // Joining the block at q_i.
        Rat left = (i == 0) ? zero
                            : midpoint(rc.points[static_cast<std::size_t>(i) - 1],
                                       rc.points[static_cast<std::size_t>(i)]);
        Rat right = (i == m - 1) ? one
                                 : midpoint(rc.points[static_cast<std::size_t>(i)],
                                            rc.points[static_cast<std::size_t>(i) + 1]);
        cs.push_back({(right - left) / Rat(rc.mult[static_cast<std::size_t>(i)] + 1),
                      true, rc.points[static_cast<std::size_t>(i)], {}});
    }
    return cs;
}

} // namespace detail

/// Exact supremum of vendor k's payoff over all relocations, with a
/// maximizing location when one exists.
inline DeviationReport deviation_sup(const Profile& p, int k) {
    DeviationReport r;
    r.vendor = k;
    r.current = payoff_closed_form(p).value(k); // also validates k

    if (p.n() == 1) {
        // Sole vendor: every location serves the whole city.
        r.sup = Rat(1);
        r.attained = true;
        r.witness = p.position(1);
        return r;
    }

    auto cs = detail::deviation_candidates(detail::reduce_without(p, k));
    r.sup = cs.front().value;
    for (const auto& c : cs)
        if (r.sup < c.value) r.sup = c.value;

    for (const auto& c : cs) {
        if (c.value != r.sup || !c.attained) continue;
        if (!r.attained || c.witness < *r.witness) {
            r.attained = true;
            r.witness = c.witness;
        }
    }
    if (!r.attained) {
        for (const auto& c : cs) {
            if (c.value == r.sup) {
                r.limit = c.limit;
                break;
            }
        }
    }

    if (r.sup < r.current)
        throw std::logic_error("deviation_sup: supremum below current payoff");
    return r;
}

namespace detail {

// A concrete relocation strictly better than `current`, given that the
// supremum along the open gap `lim` exceeds it. Halfway between "barely
// better" and the unattained edge keeps the point well inside the gap.
inline Rat profitable_point_in_gap(const OpenLimit& lim, const Rat& current) {
    if (lim.approach == OpenLimit::Approach::toward_hi) {
        // payoff(t) = (t + hi)/2 > current  <=>  t > 2*current - hi
        Rat threshold = max(lim.lo, Rat(2) * current - lim.hi);
        return midpoint(threshold, lim.hi);
    }
    // payoff(t) = 1 - (lo + t)/2 > current  <=>  t < 2*(1 - current) - lo
    Rat threshold = min(lim.hi, Rat(2) * (Rat(1) - current) - lim.lo);
    return midpoint(lim.lo, threshold);
}

} // namespace detail

/// Definition-based check: equilibrium iff no vendor can strictly gain by
/// relocating. Every violation comes with a concrete profitable move whose
/// payoff has been re-evaluated from scratch.
inline Verdict verify_equilibrium(const Profile& p) {
    Verdict v;
    v.holds = true;
    for (int k = 1; k <= p.n(); ++k) {
        DeviationReport r = deviation_sup(p, k);
        if (r.profitable()) {
            v.holds = false;
            Rat point = r.attained ? *r.witness
                                   : detail::profitable_point_in_gap(*r.limit, r.current);
            Rat gain = payoff_closed_form(move_vendor(p, k, point)).value(k);
            if (!(r.current < gain))
                throw std::logic_error("verify_equilibrium: witness relocation not profitable");
            Finding f;
            f.code = "definition.profitable_deviation";
            f.vendor = k;
            f.deviation_point = point;
            f.deviation_payoff = gain;
            f.detail = "vendor " + std::to_string(k) + " at " + to_string(p.position(k)) +
                       " earns " + to_string(r.current) + " but would earn " +
                       to_string(gain) + " at " + to_string(point);
            v.findings.push_back(std::move(f));
        }
        v.reports.push_back(std::move(r));
    }
    return v;
}

namespace detail {

// Shared by the condition checker and by length-system validation: the
// n >= 4 interval conditions on a full gap-length vector L_0..L_n.
inline void interval_condition_findings(const std::vector<Rat>& L,
                                        std::vector<Finding>& out) {
    const int n = static_cast<int>(L.size()) - 1;
    const Rat zero(0);
    const Rat twice_edge = Rat(2) * L.front();

    auto idx = [](int j) { return static_cast<std::size_t>(j); };

    if (L.front() != L.back())
        out.push_back({"main1.edge_lengths_equal", 0,
                       "outer gaps differ: I_0 = " + to_string(L.front()) +
                           ", I_" + std::to_string(n) + " = " + to_string(L.back()),
                       {}, {}});
    if (!(zero < L.front()))
        out.push_back({"main1.edge_positive", 0,
                       "left outer gap I_0 = " + to_string(L.front()) +
                           " is not positive",
                       {}, {}});
    if (L[idx(1)] != zero)
        out.push_back({"main1.inner_edge_zero", 1,
                       "I_1 = " + to_string(L[idx(1)]) +
                           ", but the two leftmost vendors must coincide",
                       {}, {}});
    if (L[idx(n - 1)] != zero)
        out.push_back({"main1.inner_edge_zero", n - 1,
                       "I_" + std::to_string(n - 1) + " = " + to_string(L[idx(n - 1)]) +
                           ", but the two rightmost vendors must coincide",
                       {}, {}});
    if (L[idx(2)] != twice_edge)
        out.push_back({"main1.left_ratio", 2,
                       "I_2 = " + to_string(L[idx(2)]) + " but needs to be 2*I_0 = " +
                           to_string(twice_edge),
                       {}, {}});
    if (L[idx(n - 2)] != Rat(2) * L.back())
        out.push_back({"main1.right_ratio", n - 2,
                       "I_" + std::to_string(n - 2) + " = " + to_string(L[idx(n - 2)]) +
                           " but needs to be 2*I_" + std::to_string(n) + " = " +
                           to_string(Rat(2) * L.back()),
                       {}, {}});
    for (int j = 0; j <= n; ++j) {
        if (twice_edge < L[idx(j)])
            out.push_back({"main2.max_length", j,
                           "I_" + std::to_string(j) + " = " + to_string(L[idx(j)]) +
                               " exceeds 2*I_0 = " + to_string(twice_edge),
                           {}, {}});
    }
    for (int k = 1; k <= n - 2; ++k) {
        Rat pair = L[idx(k)] + L[idx(k + 1)];
        if (pair < twice_edge)
            out.push_back({"main2.pair_sum", k,
                           "I_" + std::to_string(k) + " + I_" + std::to_string(k + 1) +
                               " = " + to_string(pair) + " falls short of 2*I_0 = " +
                               to_string(twice_edge),
                           {}, {}});
    }
}

} // namespace detail

/// Interval-condition check: decides equilibrium from gap lengths alone,
/// with one finding per violated clause. Defined for n >= 2.
inline Verdict check_theorem_conditions(const Profile& p) {
    if (p.n() < 2)
        throw std::invalid_argument("interval conditions are defined for n >= 2");

    Verdict v;
    if (p.n() == 2) {
        const Rat half(1, 2);
        v.holds = p.position(1) == half && p.position(2) == half;
        if (!v.holds)
            v.findings.push_back({"thm.n2.center", 0,
                                  "with two vendors the only equilibrium places both at 1/2; "
                                  "got " + to_string(p.position(1)) + " and " +
                                      to_string(p.position(2)),
                                  {}, {}});
        return v;
    }
    if (p.n() == 3) {
        v.holds = false;
        v.findings.push_back({"thm.n3.none", 0,
                              "no three-vendor profile is an equilibrium", {}, {}});
        return v;
    }

    detail::interval_condition_findings(intervals(p).lengths(), v.findings);
    v.holds = v.findings.empty();
    return v;
}

/// The classical necessary conditions every equilibrium satisfies: no
/// vendor at either boundary, no point with three or more vendors, and the
/// two vendors at each extreme paired up. Passing them does not certify an
/// equilibrium. Defined for n >= 2.
inline Verdict check_necessary(const Profile& p) {
    if (p.n() < 2)
        throw std::invalid_argument("necessary conditions are defined for n >= 2");

    Verdict v;
    const int n = p.n();
    if (p.position(1) == Rat(0))
        v.findings.push_back({"nec1.left_boundary", 1,
                              "vendor 1 sits on the boundary 0", {}, {}});
    if (p.position(n) == Rat(1))
        v.findings.push_back({"nec1.right_boundary", n,
                              "vendor " + std::to_string(n) + " sits on the boundary 1",
                              {}, {}});
    for (const Block& b : blocks(p)) {
        if (b.multiplicity() >= 3)
            v.findings.push_back({"nec2.triple_occupancy", b.members.front(),
                                  std::to_string(b.multiplicity()) + " vendors share " +
                                      to_string(b.position) + "; at most two may coincide",
                                  {}, {}});
    }
    if (p.position(1) != p.position(2))
        v.findings.push_back({"nec3.left_pair", 1,
                              "vendor 1 at " + to_string(p.position(1)) +
                                  " is not paired with vendor 2 at " + to_string(p.position(2)),
                              {}, {}});
    if (p.position(n - 1) != p.position(n))
        v.findings.push_back({"nec3.right_pair", n,
                              "vendor " + std::to_string(n) + " at " + to_string(p.position(n)) +
                                  " is not paired with vendor " + std::to_string(n - 1) +
                                  " at " + to_string(p.position(n - 1)),
                              {}, {}});
    v.holds = v.findings.empty();
    return v;
}

/// Whether every payoff reaches the left outer gap length, the floor that
/// the interval conditions guarantee. Exact; requires those conditions.
struct FloorCheck {
    Rat floor_value;      // I_0
    Rat min_payoff;
    int argmin_vendor;    // smallest vendor index attaining the minimum
    bool holds;           // min_payoff >= floor_value
};

inline FloorCheck payoff_floor_check(const Profile& p) {
    if (p.n() < 4)
        throw std::invalid_argument("payoff floor needs at least four vendors");
    if (!check_theorem_conditions(p).holds)
        throw std::invalid_argument("payoff floor needs the interval conditions to hold");

    PayoffVector f = payoff_closed_form(p);
    FloorCheck fc;
    fc.floor_value = intervals(p).length(0);
    fc.min_payoff = f.value(1);
    fc.argmin_vendor = 1;
    for (int k = 2; k <= p.n(); ++k) {
        if (f.value(k) < fc.min_payoff) {
            fc.min_payoff = f.value(k);
            fc.argmin_vendor = k;
        }
    }
    fc.holds = !(fc.min_payoff < fc.floor_value);
    return fc;
}

/// Both verification routes side by side. They are provably equivalent, so
/// agree == false always indicates a defect in this library.
struct AgreementRecord {
    Verdict definition;
    Verdict conditions;
    bool agree = false;
};

inline AgreementRecord cross_validate(const Profile& p) {
    AgreementRecord ar;
    ar.definition = verify_equilibrium(p);
    ar.conditions = check_theorem_conditions(p);
    ar.agree = ar.definition.holds == ar.conditions.holds;
    return ar;
}

} // namespace hotelling
