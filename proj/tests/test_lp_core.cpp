#include "vchc/lp.hpp"

#include "lp_tools.hpp"

#include <doctest.h>

using namespace vchc;
using vchc::testing::certifies_lower_bound;
using vchc::testing::enumerate_vertex_optimum;
using vchc::testing::random_boxed_lp;

namespace {

LpProblem interval_lp() {
    LpProblem lp;
    lp.add_var("x", Rat(1));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Ge, Rat(1, 2));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Le, Rat(1));
    return lp;
}

LpProblem unit_square_lp() {
    LpProblem lp;
    lp.add_var("x", Rat(0));
    lp.add_var("y", Rat(0));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Ge, Rat(0));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Le, Rat(1));
    lp.add_constraint({Term{1, Rat(1)}}, Rel::Ge, Rat(0));
    lp.add_constraint({Term{1, Rat(1)}}, Rel::Le, Rat(1));
    return lp;
}

}  // namespace

TEST_CASE("one-variable interval: minimum at the lower bound with certificate") {
    auto res = solve_extreme(interval_lp());
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.objective_value == Rat(1, 2));
    CHECK(res.solution.values[0] == Rat(1, 2));
    REQUIRE(res.solution.tight_set.size() == 1);
    CHECK(res.solution.tight_set[0] == 0);  // x >= 1/2
    CHECK(verify_extreme(interval_lp(), res.solution));
}

TEST_CASE("solve twice gives identical solutions") {
    auto a = solve_extreme(interval_lp());
    auto b = solve_extreme(interval_lp());
    CHECK(a.solution.values == b.solution.values);
    CHECK(a.solution.tight_set == b.solution.tight_set);
}

TEST_CASE("degenerate objective over the unit square still lands on a vertex") {
    auto lp = unit_square_lp();
    auto res = solve_extreme(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(verify_extreme(lp, res.solution));
    for (const Rat& v : res.solution.values) CHECK((v == 0 || v == 1));
}

TEST_CASE("midpoint of two optimal vertices fails verification") {
    auto lp = unit_square_lp();
    BasicSolution mid;
    mid.values = {Rat(1, 2), Rat(1, 2)};
    mid.objective_value = Rat(0);
    mid.tight_set = {0, 2};
    CHECK_FALSE(verify_extreme(lp, mid));
}

TEST_CASE("solution violating a constraint fails verification") {
    auto lp = interval_lp();
    BasicSolution bad;
    bad.values = {Rat(2)};
    bad.objective_value = Rat(2);
    bad.tight_set = {1};
    CHECK_FALSE(verify_extreme(lp, bad));
}

TEST_CASE("infeasible and unbounded detection") {
    LpProblem lp;
    lp.add_var("x", Rat(1));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Ge, Rat(3));
    lp.add_constraint({Term{0, Rat(1)}}, Rel::Le, Rat(2));
    CHECK(solve_extreme(lp).status == LpStatus::Infeasible);

    LpProblem unb;
    unb.add_var("x", Rat(-1));
    unb.add_constraint({Term{0, Rat(1)}}, Rel::Ge, Rat(0));
    CHECK(solve_extreme(unb).status == LpStatus::Unbounded);
}

TEST_CASE("two-row infeasibility via conflicting general rows") {
    LpProblem lp;
    lp.add_var("x", Rat(0));
    lp.add_var("y", Rat(1));
    lp.add_constraint({Term{0, Rat(1)}, Term{1, Rat(1)}}, Rel::Ge, Rat(4));
    lp.add_constraint({Term{0, Rat(1)}, Term{1, Rat(1)}}, Rel::Le, Rat(2));
    CHECK(solve_extreme(lp).status == LpStatus::Infeasible);
}

TEST_CASE("zero-variable problems reduce to truth checks") {
    LpProblem lp;
    lp.add_constraint({}, Rel::Ge, Rat(0));
    auto res = solve_extreme(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.solution.objective_value == 0);
    CHECK(verify_extreme(lp, res.solution));

    LpProblem bad;
    bad.add_constraint({}, Rel::Ge, Rat(1));
    CHECK(solve_extreme(bad).status == LpStatus::Infeasible);
}

TEST_CASE("weak-duality certificate checker accepts a valid certificate") {
    auto lp = interval_lp();
    // 1 * (x >= 1/2) dominates the objective and proves the bound.
    CHECK(certifies_lower_bound(lp, {Rat(1), Rat(0)}, Rat(1, 2)));
    CHECK_FALSE(certifies_lower_bound(lp, {Rat(0), Rat(1)}, Rat(1)));
}

TEST_CASE("line_stop_time: interpolation hits the stated events") {
    SUBCASE("single crossing at t = 1/2") {
        auto res = line_stop_time({Rat(3, 4)}, {Rat(1, 4)},
                                  {StopEvent{{Term{0, Rat(1)}}, Rat(1, 2)}});
        REQUIRE(res.has_value());
        CHECK(res->t == Rat(1, 2));
        CHECK(res->triggered == std::vector<int>{0});
    }
    SUBCASE("event never reached") {
        auto res = line_stop_time({Rat(1, 4)}, {Rat(3, 4)},
                                  {StopEvent{{Term{0, Rat(1)}}, Rat(0)}});
        CHECK_FALSE(res.has_value());
    }
    SUBCASE("earliest of two events wins") {
        // (x, y) from (1, 0) to (0, 1): x == y at t = 1/2, y == 3/4 at t = 3/4.
        std::vector<StopEvent> events;
        events.push_back(StopEvent{{Term{0, Rat(1)}, Term{1, Rat(-1)}}, Rat(0)});
        events.push_back(StopEvent{{Term{1, Rat(1)}}, Rat(3, 4)});
        auto res = line_stop_time({Rat(1), Rat(0)}, {Rat(0), Rat(1)}, events);
        REQUIRE(res.has_value());
        CHECK(res->t == Rat(1, 2));
        CHECK(res->triggered == std::vector<int>{0});
    }
    SUBCASE("event constant in t is excluded") {
        auto res = line_stop_time({Rat(0), Rat(0)}, {Rat(0), Rat(1)},
                                  {StopEvent{{Term{0, Rat(1)}}, Rat(5)}});
        CHECK_FALSE(res.has_value());
    }
    SUBCASE("simultaneous events are all reported") {
        std::vector<StopEvent> events;
        events.push_back(StopEvent{{Term{0, Rat(1)}}, Rat(1, 2)});
        events.push_back(StopEvent{{Term{0, Rat(2)}}, Rat(1)});
        auto res = line_stop_time({Rat(0)}, {Rat(1)}, events);
        REQUIRE(res.has_value());
        CHECK(res->t == Rat(1, 2));
        CHECK(res->triggered == std::vector<int>{0, 1});
    }
}

TEST_CASE("solver optimum matches brute-force vertex enumeration on random LPs") {
    int solved = 0, infeasible = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto lp = random_boxed_lp(seed);
        auto oracle = enumerate_vertex_optimum(lp);
        auto res = solve_extreme(lp);
        CAPTURE(seed);
        if (oracle) {
            REQUIRE(res.status == LpStatus::Optimal);
            CHECK(res.solution.objective_value == *oracle);
            CHECK(verify_extreme(lp, res.solution));
            ++solved;
        } else {
            CHECK(res.status == LpStatus::Infeasible);
            ++infeasible;
        }
    }
    // The generator should exercise both outcomes.
    CHECK(solved > 10);
    CHECK(infeasible > 0);
}
