#pragma once

// Best-response dynamics on a grid.
//
// Locations are restricted to the m+1 points j/m. Each round, every
// vendor's best grid relocation is computed exactly; the vendor with the
// largest available improvement moves (ties: smallest index, then smallest
// location). The walk ends at a fixed point (no vendor can improve), on
// revisiting a state (a cycle, with its period), or at the step limit.
// Grid fixed points need not be equilibria of the continuous game, so a
// fixed point is additionally handed to the exact verifier.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "city.hpp"
#include "equilibrium.hpp"
#include "payoff.hpp"
#include "rational.hpp"

namespace hotelling {

/// Whether every vendor location is a multiple of 1/m.
inline bool on_grid(const Profile& p, int grid) {
    if (grid < 1)
        throw std::invalid_argument("grid resolution must be positive");
    for (const Rat& x : p.positions())
        if (grid % x.den() != 0) return false;
    return true;
}

struct GridBestResponse {
    Rat point;   // smallest location achieving the best payoff
    Rat payoff;
};

/// Vendor k's best relocation among the grid points j/m, everyone else
/// fixed. Ties go to the smallest location.
inline GridBestResponse best_response_on_grid(const Profile& p, int k, int grid) {
    if (grid < 1)
        throw std::invalid_argument("grid resolution must be positive");
    GridBestResponse best{Rat(0), payoff_closed_form(move_vendor(p, k, Rat(0))).value(k)};
    for (int j = 1; j <= grid; ++j) {
        Rat t(j, grid);
        Rat f = payoff_closed_form(move_vendor(p, k, t)).value(k);
        if (best.payoff < f) {
            best.point = t;
            best.payoff = f;
        }
    }
    return best;
}

enum class DynamicsOutcome { fixed_point, cycle, step_limit };

inline std::string to_string(DynamicsOutcome o) {
    switch (o) {
        case DynamicsOutcome::fixed_point: return "fixed_point";
        case DynamicsOutcome::cycle: return "cycle";
        case DynamicsOutcome::step_limit: return "step_limit";
    }
    throw std::logic_error("unknown dynamics outcome");
}

struct DynamicsStep {
    int vendor;  // 1-based rank in the sorted state before the move
    Rat from;
    Rat to;
    Rat payoff_before;
    Rat payoff_after;
};

struct DynamicsTrace {
    DynamicsOutcome outcome;
    std::vector<DynamicsStep> steps;
    Profile final_state;
    int cycle_period;        // > 0 exactly when outcome == cycle
    bool exact_equilibrium;  // fixed points only: verdict of the exact verifier
};

/// Runs the dynamics from `start` (which must lie on the grid) for at most
/// `max_steps` moves. The schedule is deterministic; `seed` is accepted
/// for interface stability and currently unused.
inline DynamicsTrace run_dynamics(const Profile& start, int grid, int max_steps,
                                  std::uint64_t seed = 0) {
    (void)seed;
    if (!on_grid(start, grid))
        throw std::invalid_argument("starting profile is not on the 1/" +
                                    std::to_string(grid) + " grid");
    if (max_steps < 0)
        throw std::invalid_argument("step limit must be nonnegative");

    Profile state = start;
    std::vector<DynamicsStep> steps;
    std::map<std::vector<Rat>, int> seen;

    for (;;) {
        if (auto it = seen.find(state.positions()); it != seen.end()) {
            int period = static_cast<int>(steps.size()) - it->second;
            return DynamicsTrace{DynamicsOutcome::cycle, std::move(steps), std::move(state),
                                 period, false};
        }
        seen.emplace(state.positions(), static_cast<int>(steps.size()));

        PayoffVector f = payoff_closed_form(state);
        int mover = 0;
        GridBestResponse mover_br{Rat(0), Rat(0)};
        Rat best_gain(0);
        for (int k = 1; k <= state.n(); ++k) {
            GridBestResponse br = best_response_on_grid(state, k, grid);
            Rat gain = br.payoff - f.value(k);
            if (best_gain < gain) {
                best_gain = gain;
                mover = k;
                mover_br = br;
            }
        }
        if (mover == 0) {
            bool exact = verify_equilibrium(state).holds;
            return DynamicsTrace{DynamicsOutcome::fixed_point, std::move(steps),
                                 std::move(state), 0, exact};
        }
        if (static_cast<int>(steps.size()) == max_steps) {
            return DynamicsTrace{DynamicsOutcome::step_limit, std::move(steps),
                                 std::move(state), 0, false};
        }

        steps.push_back(DynamicsStep{mover, state.position(mover), mover_br.point,
                                     f.value(mover), mover_br.payoff});
        state = make_profile(move_vendor(state, mover, mover_br.point));
    }
}

/// The step list as CSV, rationals in p/q form.
inline std::string trace_csv(const DynamicsTrace& tr) {
    std::string out = "step,vendor,from,to,payoff_before,payoff_after\n";
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const DynamicsStep& s = tr.steps[i];
        out += std::to_string(i + 1) + ',' + std::to_string(s.vendor) + ',' +
               to_string(s.from) + ',' + to_string(s.to) + ',' +
               to_string(s.payoff_before) + ',' + to_string(s.payoff_after) + '\n';
    }
    return out;
}

} // namespace hotelling
