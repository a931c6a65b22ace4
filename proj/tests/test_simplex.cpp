#include <doctest.h>

#include <cmath>

#include "costboost/errors.hpp"
#include "costboost/games.hpp"
#include "costboost/harness.hpp"
#include "costboost/simplex.hpp"
#include "test_util.hpp"

using namespace costboost;

TEST_CASE("single-variable bound: maximize x subject to x <= 3") {
    LinearProgram lp = LinearProgram::with_vars(1, /*maximize=*/true);
    lp.objective[0] = 1.0;
    lp.add_constraint({1.0}, ConstraintSense::LessEq, 3.0);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimal_value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.primal[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("unbounded ray: maximize x with no upper bound") {
    LinearProgram lp = LinearProgram::with_vars(1, /*maximize=*/true);
    lp.objective[0] = 1.0;
    const LpSolution sol = solve(lp);
    CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("symmetric minimax of the 2x2 identity-cost game") {
    // minimize t s.t. p1 + p2 = 1, p >= 0, p1 <= t, p2 <= t
    LinearProgram lp = LinearProgram::with_vars(3);
    lp.objective[2] = 1.0;
    lp.add_constraint({1.0, 1.0, 0.0}, ConstraintSense::Equal, 1.0);
    lp.add_constraint({1.0, 0.0, -1.0}, ConstraintSense::LessEq, 0.0);
    lp.add_constraint({0.0, 1.0, -1.0}, ConstraintSense::LessEq, 0.0);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimal_value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("infeasible bounds and rows are classified") {
    LinearProgram lp = LinearProgram::with_vars(1);
    lp.objective[0] = 1.0;
    lp.add_constraint({1.0}, ConstraintSense::GreaterEq, 2.0);
    lp.add_constraint({1.0}, ConstraintSense::LessEq, 1.0);
    CHECK(solve(lp).status == LpStatus::Infeasible);

    LinearProgram crossed = LinearProgram::with_vars(1);
    crossed.set_bounds(0, 3.0, 1.0);
    CHECK(solve(crossed).status == LpStatus::Infeasible);
}

TEST_CASE("free variables and equalities") {
    LinearProgram lp = LinearProgram::with_vars(2);
    lp.set_bounds(0, -kInf, kInf);
    lp.objective = {1.0, 0.0};
    lp.add_constraint({1.0, 1.0}, ConstraintSense::Equal, -5.0);
    lp.add_constraint({0.0, 1.0}, ConstraintSense::LessEq, 2.0);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // x0 = -5 - x1 is minimized by pushing x1 to its cap.
    CHECK(sol.optimal_value == doctest::Approx(-7.0).epsilon(1e-12));
    CHECK(sol.primal[0] == doctest::Approx(-7.0));
    CHECK(sol.primal[1] == doctest::Approx(2.0));
}

TEST_CASE("upper-bounded variables pass through the shift") {
    LinearProgram lp = LinearProgram::with_vars(2, /*maximize=*/true);
    lp.objective = {2.0, 1.0};
    lp.set_bounds(0, 0.5, 1.5);
    lp.set_bounds(1, 0.0, 4.0);
    lp.add_constraint({1.0, 1.0}, ConstraintSense::LessEq, 3.0);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.primal[0] == doctest::Approx(1.5));
    CHECK(sol.primal[1] == doctest::Approx(1.5));
    CHECK(sol.optimal_value == doctest::Approx(4.5));
}

TEST_CASE("dimension mismatch is an input error") {
    LinearProgram lp = LinearProgram::with_vars(2);
    lp.add_constraint({1.0}, ConstraintSense::LessEq, 1.0);
    CHECK_THROWS_AS(solve(lp), InputError);

    LinearProgram nan_lp = LinearProgram::with_vars(1);
    nan_lp.objective[0] = std::nan("");
    CHECK_THROWS_AS(solve(nan_lp), InputError);
}

TEST_CASE("optimal solutions re-substitute feasibly on random game LPs") {
    Rng rng(20240601);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 2 + static_cast<int>(uniform01(rng) * 3);
        CostMatrix w = CostMatrix::zeros(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) w.at(i, j) = uniform01(rng);

        LinearProgram lp = LinearProgram::with_vars(k + 1);
        lp.objective[k] = 1.0;
        for (int j = 0; j < k; ++j) {
            std::vector<double> row(k + 1, 0.0);
            for (int i = 0; i < k; ++i) row[i] = w(i, j);
            row[k] = -1.0;
            lp.add_constraint(std::move(row), ConstraintSense::LessEq, 0.0);
        }
        std::vector<double> simplex_row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) simplex_row[i] = 1.0;
        lp.add_constraint(std::move(simplex_row), ConstraintSense::Equal, 1.0);

        const LpSolution sol = solve(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(feasibility_violation(lp, sol.primal) <= kLpFeasTol);
        double direct = 0.0;
        for (int j = 0; j < lp.num_vars(); ++j) direct += lp.objective[j] * sol.primal[j];
        CHECK(std::fabs(direct - sol.optimal_value) <= kLpObjTol);
    }
}

TEST_CASE("deterministic for a fixed input") {
    LinearProgram lp = LinearProgram::with_vars(4);
    lp.objective = {0.3, -0.2, 0.7, 0.05};
    lp.add_constraint({1.0, 1.0, 1.0, 1.0}, ConstraintSense::Equal, 1.0);
    lp.add_constraint({0.2, 0.9, 0.4, 0.1}, ConstraintSense::LessEq, 0.5);
    lp.add_constraint({0.5, 0.1, 0.8, 0.3}, ConstraintSense::GreaterEq, 0.2);
    const LpSolution a = solve(lp);
    const LpSolution b = solve(lp);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.optimal_value == b.optimal_value);
    CHECK(a.primal == b.primal);
}

TEST_CASE("game LP agrees with the dense grid oracle at k <= 3") {
    Rng rng(7);
    for (int trial = 0; trial < 8; ++trial) {
        const int k = trial % 2 == 0 ? 2 : 3;
        CostMatrix w = CostMatrix::zeros(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) w.at(i, j) = uniform01(rng);
        const LabelSet J = full_set(k);
        const double lp_value = game_value(w, J).value;
        const double oracle = oracle_game_value(w, J, 1e-2);
        CHECK(std::fabs(lp_value - oracle) <= 2e-2);
    }
}
