#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "hotelling/dynamics.hpp"

using namespace hotelling;

TEST_CASE("grid membership", "[dynamics]") {
    CHECK(on_grid(Profile({Rat(1, 5), Rat(9, 10)}), 10));
    CHECK(on_grid(Profile({Rat(0), Rat(1)}), 1));
    CHECK_FALSE(on_grid(Profile({Rat(1, 3), Rat(1, 2)}), 10));
    CHECK_THROWS_AS(on_grid(Profile({Rat(1, 2)}), 0), std::invalid_argument);
}

TEST_CASE("best grid response against a fixed opponent", "[dynamics]") {
    // opponent at 3/4, grid quarters: 1/2 serves [0, 5/8]
    GridBestResponse br = best_response_on_grid(Profile({Rat(1, 4), Rat(3, 4)}), 1, 4);
    CHECK(br.point == Rat(1, 2));
    CHECK(br.payoff == Rat(5, 8));

    // ties go to the smallest location: against (1/2, 1/2) on halves,
    // t = 0, 1/2, 1 all pay 1/4, 1/3, 1/4; the best is unique here, so use
    // a finer case: opponents at 1/2 on a unit grid
    GridBestResponse tie =
        best_response_on_grid(Profile({Rat(0), Rat(1, 2), Rat(1)}), 1, 2);
    // t = 0 pays 1/4, t = 1/2 pays 3/8 (joining the block), t = 1 pays 1/4
    CHECK(tie.point == Rat(1, 2));
    CHECK(tie.payoff == Rat(3, 8));
}

TEST_CASE("two vendors leapfrog to the center", "[dynamics]") {
    Profile start({Rat(1, 5), Rat(9, 10)});
    DynamicsTrace tr = run_dynamics(start, 10, 200);
    CHECK(tr.outcome == DynamicsOutcome::fixed_point);
    CHECK(tr.final_state == Profile({Rat(1, 2), Rat(1, 2)}));
    CHECK(tr.exact_equilibrium);

    // the first move: both vendors could gain 3/10, so the tie goes to
    // vendor 1, whose best reply to an opponent at 9/10 is 8/10
    REQUIRE_FALSE(tr.steps.empty());
    const DynamicsStep& s = tr.steps.front();
    CHECK(s.vendor == 1);
    CHECK(s.from == Rat(1, 5));
    CHECK(s.to == Rat(4, 5));
    CHECK(s.payoff_before == Rat(11, 20));
    CHECK(s.payoff_after == Rat(17, 20));
}

TEST_CASE("a grid fixed point need not be an exact equilibrium", "[dynamics]") {
    // on quarters, (1/4, 1/2, 3/4) is stuck, yet no three-vendor profile
    // is an equilibrium of the continuous game
    DynamicsTrace tr = run_dynamics(Profile({Rat(1, 4), Rat(1, 2), Rat(3, 4)}), 4, 50);
    CHECK(tr.outcome == DynamicsOutcome::fixed_point);
    CHECK(tr.steps.empty());
    CHECK_FALSE(tr.exact_equilibrium);
}

TEST_CASE("an exact equilibrium is immediately stationary", "[dynamics]") {
    DynamicsTrace tr =
        run_dynamics(Profile({Rat(1, 4), Rat(1, 4), Rat(3, 4), Rat(3, 4)}), 4, 50);
    CHECK(tr.outcome == DynamicsOutcome::fixed_point);
    CHECK(tr.steps.empty());
    CHECK(tr.exact_equilibrium);
}

TEST_CASE("three vendors on sixths fall into a cycle", "[dynamics]") {
    DynamicsTrace tr = run_dynamics(Profile({Rat(1, 6), Rat(1, 2), Rat(5, 6)}), 6, 100);
    CHECK(tr.outcome == DynamicsOutcome::cycle);
    CHECK(tr.cycle_period == 4);
    CHECK(tr.steps.size() == 6);
    CHECK_FALSE(tr.exact_equilibrium);
}

TEST_CASE("the step limit truncates the walk", "[dynamics]") {
    DynamicsTrace tr = run_dynamics(Profile({Rat(1, 6), Rat(1, 2), Rat(5, 6)}), 6, 3);
    CHECK(tr.outcome == DynamicsOutcome::step_limit);
    CHECK(tr.steps.size() == 3);
}

TEST_CASE("dynamics validate their inputs", "[dynamics]") {
    CHECK_THROWS_AS(run_dynamics(Profile({Rat(1, 3), Rat(1, 2)}), 10, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_dynamics(Profile({Rat(1, 2)}), 2, -1), std::invalid_argument);
}

TEST_CASE("trace renders as CSV", "[dynamics]") {
    DynamicsTrace tr = run_dynamics(Profile({Rat(1, 5), Rat(9, 10)}), 10, 200);
    std::string csv = trace_csv(tr);
    CHECK(csv.rfind("step,vendor,from,to,payoff_before,payoff_after\n", 0) == 0);
    CHECK(csv.find("1,1,1/5,4/5,11/20,17/20\n") != std::string::npos);
}
