#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>
#include <vector>

#include "hotelling/equilibrium.hpp"
#include "hotelling/synthesis.hpp"

using namespace hotelling;

TEST_CASE("length systems validate on construction", "[synthesis]") {
    // canonical six-vendor data: a = 1/8, one middle gap of 2/8
    CHECK_NOTHROW(LengthSystem(6, Rat(1, 8), {Rat(1, 4)}));

    CHECK_THROWS_AS(LengthSystem(3, Rat(1, 4), {}), std::invalid_argument);
    // wrong middle count
    CHECK_THROWS_AS(LengthSystem(6, Rat(1, 8), {}), std::invalid_argument);
    // lengths don't fill the city
    CHECK_THROWS_AS(LengthSystem(6, Rat(1, 8), {Rat(1, 8)}), std::invalid_argument);
    // middle gap above the 2a cap (sum kept right)
    CHECK_THROWS_AS(LengthSystem(7, Rat(1, 10), {Rat(3, 10), Rat(1, 10)}),
                    std::invalid_argument);
    // lengths sum to 1 but the first two middle gaps only reach 1/8 < 2a
    CHECK_THROWS_AS(LengthSystem(8, Rat(1, 8), {Rat(1, 8), Rat(0), Rat(1, 8)}),
                    std::invalid_argument);
    // negative middle gap
    CHECK_THROWS_AS(LengthSystem(7, Rat(1, 6), {Rat(-1, 3), Rat(1, 3)}),
                    std::invalid_argument);
    // zero edge
    CHECK_THROWS_AS(LengthSystem(4, Rat(0), {}), std::invalid_argument);
}

TEST_CASE("gap lengths accumulate into the expected profiles", "[synthesis]") {
    CHECK(lengths_to_profile(LengthSystem(4, Rat(1, 4), {})) ==
          Profile({Rat(1, 4), Rat(1, 4), Rat(3, 4), Rat(3, 4)}));
    CHECK(lengths_to_profile(LengthSystem(5, Rat(1, 6), {})) ==
          Profile({Rat(1, 6), Rat(1, 6), Rat(1, 2), Rat(5, 6), Rat(5, 6)}));
    CHECK(lengths_to_profile(LengthSystem(6, Rat(1, 8), {Rat(1, 4)})) ==
          Profile({Rat(1, 8), Rat(1, 8), Rat(3, 8), Rat(5, 8), Rat(7, 8), Rat(7, 8)}));
}

TEST_CASE("feasible edge range", "[synthesis]") {
    CHECK(feasible_edge_range(4) == std::pair{Rat(1, 4), Rat(1, 4)});
    CHECK(feasible_edge_range(5) == std::pair{Rat(1, 6), Rat(1, 6)});
    CHECK(feasible_edge_range(6) == std::pair{Rat(1, 8), Rat(1, 6)});
    CHECK(feasible_edge_range(7) == std::pair{Rat(1, 10), Rat(1, 8)});
    CHECK(feasible_edge_range(8) == std::pair{Rat(1, 12), Rat(1, 8)});
    CHECK(feasible_edge_range(10) == std::pair{Rat(1, 16), Rat(1, 10)});
    CHECK_THROWS_AS(feasible_edge_range(3), std::invalid_argument);
}

TEST_CASE("canonical equilibria", "[synthesis]") {
    CHECK(canonical_equilibrium(2) == Profile({Rat(1, 2), Rat(1, 2)}));
    CHECK_THROWS_AS(canonical_equilibrium(3), std::invalid_argument);
    CHECK(canonical_equilibrium(4) == Profile({Rat(1, 4), Rat(1, 4), Rat(3, 4), Rat(3, 4)}));
    CHECK(canonical_equilibrium(5) ==
          Profile({Rat(1, 6), Rat(1, 6), Rat(1, 2), Rat(5, 6), Rat(5, 6)}));

    for (int n = 4; n <= 12; ++n) {
        Profile p = canonical_equilibrium(n);
        CHECK(p.n() == n);
        CHECK(intervals(p).length(0) == Rat(1, 2 * n - 4));
        CHECK(verify_equilibrium(p).holds);
        CHECK(check_theorem_conditions(p).holds);
    }
}

TEST_CASE("sampling is deterministic in the seed", "[synthesis]") {
    auto a = sample_equilibria(8, 5, 42);
    auto b = sample_equilibria(8, 5, 42);
    REQUIRE(a.size() == 5);
    CHECK(a == b);

    auto c = sample_equilibria(8, 5, 43);
    CHECK(a != c); // overwhelmingly likely to differ, and pinned by the seeds
}

TEST_CASE("samples are genuine equilibria on the 1/840 lattice", "[synthesis]") {
    for (int n : {6, 7, 8, 9, 10}) {
        auto samples = sample_equilibria(n, 8, 7);
        REQUIRE(static_cast<int>(samples.size()) == 8);
        for (const Profile& p : samples) {
            CHECK(p.n() == n);
            CHECK(verify_equilibrium(p).holds);
            CHECK(check_theorem_conditions(p).holds);
            for (const Rat& x : p.positions()) CHECK(840 % x.den() == 0);
        }
    }
}

TEST_CASE("sampling actually explores the family", "[synthesis]") {
    auto samples = sample_equilibria(9, 24, 2024);
    std::set<std::vector<Rat>> distinct;
    for (const Profile& p : samples) distinct.insert(p.positions());
    CHECK(distinct.size() > 1);
}

TEST_CASE("forced cases collapse to the canonical equilibrium", "[synthesis]") {
    for (int n : {2, 4, 5}) {
        for (const Profile& p : sample_equilibria(n, 3, 99))
            CHECK(p == canonical_equilibrium(n));
    }
    CHECK(sample_equilibria(6, 0, 1).empty());
    CHECK_THROWS_AS(sample_equilibria(3, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_equilibria(6, -1, 1), std::invalid_argument);
}
