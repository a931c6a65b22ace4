#include <doctest.h>

#include <cmath>

#include "costboost/errors.hpp"
#include "costboost/games.hpp"
#include "costboost/harness.hpp"
#include "test_util.hpp"

using namespace costboost;
namespace ct = costboost::test;

TEST_CASE("expected cost on fair coins, agreement, and a hand expansion") {
    const CostMatrix zo = CostMatrix::zero_one(2);
    const SimplexDist half = SimplexDist::uniform(2);
    CHECK(expected_cost(zo, half, half) == doctest::Approx(0.5).epsilon(1e-15));

    const CostMatrix w11 = CostMatrix::binary(1.0, 1.0);
    const SimplexDist neg = SimplexDist::point_mass(2, 0);
    CHECK(expected_cost(w11, neg, neg) == doctest::Approx(0.0));

    // w_+ = 0.5, w_- = 1, p = (1/2, 1/2), q = delta_{+1}: expands to w_-/2.
    const CostMatrix w = CostMatrix::binary(0.5, 1.0);
    const SimplexDist q = SimplexDist::point_mass(2, 1);
    const double direct = ct::double_sum_cost(w, half.probs, q.probs);
    CHECK(direct == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(expected_cost(w, half, q) == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("expected cost is bilinear") {
    Rng rng(17);
    const CostMatrix w = random_cost(3, rng);
    const SimplexDist p1 = ct::random_dist(3, rng), p2 = ct::random_dist(3, rng);
    const SimplexDist q = ct::random_dist(3, rng);
    for (double a : {0.0, 0.3, 1.0}) {
        std::vector<double> mix(3);
        for (int i = 0; i < 3; ++i) mix[i] = a * p1[i] + (1 - a) * p2[i];
        const double lhs = expected_cost(w, SimplexDist(mix), q);
        const double rhs = a * expected_cost(w, p1, q) + (1 - a) * expected_cost(w, p2, q);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("expected cost rejects mismatched dimensions") {
    const CostMatrix w = CostMatrix::zero_one(3);
    CHECK_THROWS_AS(expected_cost(w, SimplexDist::uniform(2), SimplexDist::uniform(3)),
                    InputError);
}

TEST_CASE("binary game values: closed form, zero edge, and 0-1 restriction") {
    CHECK(game_value(CostMatrix::binary(1.0, 1.0), full_set(2)).value ==
          doctest::Approx(0.5).epsilon(1e-9));

    const double v = game_value(CostMatrix::binary(1.0, 0.25), full_set(2)).value;
    CHECK(v == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(std::fabs(v - ct::binary_closed_form(1.0, 0.25)) <= 1e-9);
    CHECK(std::fabs(v - oracle_game_value(CostMatrix::binary(1.0, 0.25), full_set(2), 1e-3)) <=
          2e-3);

    CHECK(game_value(CostMatrix::binary(1.0, 0.0), full_set(2)).value ==
          doctest::Approx(0.0).epsilon(1e-12));

    // 0-1 loss, k = 4, |J| = 3 has value 1 - 1/3.
    const CostMatrix zo4 = CostMatrix::zero_one(4);
    CHECK(game_value(zo4, set_of({0, 2, 3})).value == doctest::Approx(2.0 / 3).epsilon(1e-9));
}

TEST_CASE("closed form holds across random binary costs") {
    Rng rng(101);
    for (int t = 0; t < 50; ++t) {
        const double wp = 1.0 - uniform01(rng);
        const double wm = 1.0 - uniform01(rng);
        const double v = game_value(CostMatrix::binary(wp, wm), full_set(2)).value;
        CHECK(std::fabs(v - ct::binary_closed_form(wp, wm)) <= 1e-9);
    }
}

TEST_CASE("0-1 specialization: V_J = 1 - 1/|J| for k <= 4") {
    for (int k = 2; k <= 4; ++k) {
        const CostMatrix w = CostMatrix::zero_one(k);
        for (LabelSet J = 1; J <= full_set(k); ++J) {
            const double expect = 1.0 - 1.0 / set_size(J);
            CHECK(std::fabs(game_value(w, J).value - expect) <= 1e-9);
        }
    }
}

TEST_CASE("minimax certificate and monotonicity in J") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = trial % 2 == 0 ? 3 : 4;
        const CostMatrix w = random_cost(k, rng);
        for (LabelSet J = 1; J <= full_set(k); ++J) {
            const GameValue gv = game_value(w, J);
            for (int y : labels_of(J))
                CHECK(expected_cost_vs_label(w, gv.minimax_strategy, y) <= gv.value + 1e-9);
            for (LabelSet J2 = J; J2 <= full_set(k); ++J2) {
                if ((J & J2) != J) continue;
                CHECK(game_value(w, J).value <= game_value(w, J2).value + 1e-9);
            }
        }
    }
}

TEST_CASE("game_value rejects the empty subset") {
    CHECK_THROWS_AS(game_value(CostMatrix::zero_one(2), 0), InputError);
}

TEST_CASE("threshold ladder of the 0-1 loss at k = 3") {
    const ThresholdLadder ladder = threshold_ladder(CostMatrix::zero_one(3));
    REQUIRE(ladder.tau() == 3);
    CHECK(ladder.levels[0] == 0.0);
    CHECK(ladder.levels[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ladder.levels[2] == doctest::Approx(2.0 / 3).epsilon(1e-9));
    CHECK(ladder.witnesses[0].size() == 3);  // singletons
    CHECK(ladder.witnesses[1].size() == 3);  // pairs
    CHECK(ladder.witnesses[2].size() == 1);  // Y
    CHECK(ladder.v_lower(2) == doctest::Approx(0.5));
    CHECK(ladder.v_upper(2) == doctest::Approx(0.5));
    CHECK(ladder.v_lower(3) == doctest::Approx(2.0 / 3));
}

TEST_CASE("binary ladder is {0, V(w)}") {
    const CostMatrix w = CostMatrix::binary(0.7, 0.3);
    const ThresholdLadder ladder = threshold_ladder(w);
    REQUIRE(ladder.tau() == 2);
    CHECK(ladder.levels[0] == 0.0);
    CHECK(ladder.levels[1] == doctest::Approx(ct::binary_closed_form(0.7, 0.3)).epsilon(1e-9));
}

TEST_CASE("random k = 3 ladder matches the grid oracle (seed 7)") {
    Rng rng(7);
    const CostMatrix w = random_cost(3, rng);
    const ThresholdLadder ladder = threshold_ladder(w);
    for (int level = 0; level < ladder.tau(); ++level) {
        for (LabelSet J : ladder.witnesses[level]) {
            const double oracle = oracle_game_value(w, J, 1e-3);
            CHECK(std::fabs(ladder.levels[level] - oracle) <= 2e-3);
        }
    }
}

TEST_CASE("ladder structural invariants on random costs") {
    Rng rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        const int k = 2 + trial % 3;
        const ThresholdLadder ladder = threshold_ladder(random_cost(k, rng));
        CHECK(ladder.levels.front() == 0.0);
        CHECK(ladder.tau() <= (1 << k));
        for (int i = 1; i < ladder.tau(); ++i)
            CHECK(ladder.levels[i] > ladder.levels[i - 1] + kLadderDedupTol);
        for (int s = 2; s <= k; ++s) {
            CHECK(ladder.v_lower(s) <= ladder.v_upper(s) + 1e-12);
            if (s > 2) {
                CHECK(ladder.v_lower(s) >= ladder.v_lower(s - 1) - 1e-12);
                CHECK(ladder.v_upper(s) >= ladder.v_upper(s - 1) - 1e-12);
            }
        }
    }
}

TEST_CASE("ladder capacity stops at k = 12") {
    CHECK_THROWS_AS(threshold_ladder(CostMatrix::zero_one(13)), CapacityError);
}

TEST_CASE("bucket lookup on the 0-1 ladder") {
    const ThresholdLadder ladder = threshold_ladder(CostMatrix::zero_one(3));
    CHECK(bucket_of(ladder, 0.55) == 2);
    CHECK(bucket_of(ladder, 0.0) == 1);
    CHECK(bucket_of(ladder, 0.7) == 3);   // z >= V(w): top bucket
    CHECK(bucket_of(ladder, 1.0) == 3);

    int prev = 1;
    for (double z = 0.0; z <= 1.0; z += 0.01) {
        const int n = bucket_of(ladder, z);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("margins: binary gap, empty set, and the 0-1 ladder") {
    CHECK(margin(CostMatrix::binary(1.0, 1.0), 0.4) == doctest::Approx(0.1).epsilon(1e-9));
    const CostMatrix w = CostMatrix::binary(1.0, 0.25);
    CHECK(margin(w, game_value(w, full_set(2)).value) == 0.0);
    CHECK(margin(CostMatrix::zero_one(3), 0.55) ==
          doctest::Approx(2.0 / 3 - 0.55).epsilon(1e-9));
}

TEST_CASE("cost matrix validation") {
    CHECK_THROWS_AS(CostMatrix(2, {0.0, 1.5, 1.0, 0.0}).validate(), InputError);
    CHECK_THROWS_AS(CostMatrix(2, {0.1, 1.0, 1.0, 0.0}).validate(), InputError);
    CHECK_THROWS_AS(CostMatrix(1, {0.0}).validate(), InputError);
    CHECK_NOTHROW(CostMatrix::zero_one(5).validate());
}

TEST_CASE("label set helpers round-trip") {
    const LabelSet J = set_of({0, 2, 3});
    CHECK(set_size(J) == 3);
    CHECK(labels_of(J) == std::vector<int>{0, 2, 3});
    CHECK(contains(J, 2));
    CHECK(!contains(J, 1));
}
