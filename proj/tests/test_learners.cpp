#include <doctest.h>

#include <cmath>

#include "costboost/errors.hpp"
#include "costboost/harness.hpp"
#include "costboost/learners.hpp"
#include "test_util.hpp"

using namespace costboost;
namespace ct = costboost::test;

namespace {

Instance ten_point_binary() {
    Instance inst;
    inst.domain_size = 10;
    inst.k = 2;
    inst.target = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    return inst;
}

std::vector<int> all_points(const Instance& inst) {
    std::vector<int> pts(inst.domain_size);
    for (int x = 0; x < inst.domain_size; ++x) pts[x] = x;
    return pts;
}

} // namespace

TEST_CASE("loss of the target labeling is zero") {
    const Instance inst = ten_point_binary();
    const Hypothesis truth = Hypothesis::deterministic(2, inst.target);
    const CostMatrix w = CostMatrix::binary(0.8, 0.3);
    CHECK(loss(w, truth, inst, SimplexDist::uniform(10)) == 0.0);
}

TEST_CASE("random-guess loss equals the expected cost against the label marginal") {
    Rng rng(5150);
    const Instance inst = random_instance(40, 3, 9);
    const CostMatrix w = random_cost(3, rng);
    const SimplexDist D = ct::random_dist(40, rng);
    const SimplexDist p = ct::random_dist(3, rng);
    const Hypothesis h = Hypothesis::random_guess(3, p);

    std::vector<double> q(3, 0.0);
    for (int x = 0; x < 40; ++x) q[inst.label(x)] += D[x];
    const double via_marginal = expected_cost(w, p, SimplexDist(q));
    CHECK(loss(w, h, inst, D) == doctest::Approx(via_marginal).epsilon(1e-12));
}

TEST_CASE("0-1 loss counts exactly the wrong mass") {
    const Instance inst = ten_point_binary();
    std::vector<int> labels = inst.target;
    labels[0] ^= 1;
    labels[3] ^= 1;
    labels[8] ^= 1;
    const Hypothesis h = Hypothesis::deterministic(2, labels);
    CHECK(loss(CostMatrix::zero_one(2), h, inst, SimplexDist::uniform(10)) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("sample-complexity schedule") {
    const Instance inst = ten_point_binary();
    const WeakLearner learner = planted_noise_learner(CostMatrix::zero_one(2), 0.2, inst);
    CHECK(learner.m0(0.1, 0.1) ==
          static_cast<int>(std::ceil(8.0 * std::log(10.0) / 0.01)));
    CHECK_THROWS_AS(learner.m0(0.0, 0.1), InputError);
}

TEST_CASE("coin trivial learner: fair coin at the 0-1 threshold, uniform at z = 1") {
    const Instance inst = ten_point_binary();
    const MultiCost w(CostMatrix::zero_one(2));

    const WeakLearner half = coin_trivial_learner(w, GuaranteeVector({0.5}), inst);
    const Hypothesis h = half.train(all_points(inst));
    REQUIRE(h.kind == Hypothesis::Kind::RandomGuess);
    CHECK(h.guess[0] == doctest::Approx(0.5));
    CHECK(h.guess[1] == doctest::Approx(0.5));

    const WeakLearner loose = coin_trivial_learner(w, GuaranteeVector({1.0}), inst);
    const Hypothesis hu = loose.train(all_points(inst));
    CHECK(hu.guess[0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(coin_trivial_learner(w, GuaranteeVector({0.4}), inst), ContractError);
}

TEST_CASE("coin trivial learner meets both population-driven budgets with equality") {
    const Instance inst = ten_point_binary();  // balanced marginal (1/2, 1/2)
    const MultiCost pop = MultiCost::population_driven();
    const WeakLearner coin =
        coin_trivial_learner(pop, GuaranteeVector({0.25, 0.25}), inst);
    const Hypothesis h = coin.train(all_points(inst));
    REQUIRE(h.kind == Hypothesis::Kind::RandomGuess);
    // Uniform p gives p_- q_+ = p_+ q_- = 1/4 exactly.
    CHECK(h.guess[0] == doctest::Approx(0.5));
    const std::vector<double> losses = loss(pop, h, inst, SimplexDist::uniform(10));
    CHECK(losses[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(losses[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("coin-on-J learner plays the restricted minimax strategy") {
    const CostMatrix zo3 = CostMatrix::zero_one(3);
    const LabelSet J = set_of({0, 2});
    const Instance inst = random_instance_on(30, 3, J, 42);
    const WeakLearner coin = coin_on_J_learner(zo3, J, inst);
    const Hypothesis h = coin.train(all_points(inst));
    REQUIRE(h.kind == Hypothesis::Kind::RandomGuess);
    CHECK(h.guess[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(h.guess[1] == doctest::Approx(0.0).epsilon(1e-9));
    Rng rng(7);
    for (int t = 0; t < 5; ++t)
        CHECK(loss(zo3, h, inst, ct::random_dist(30, rng)) <= 0.5 + 1e-9);

    // Singleton J: the learner is exact.
    const Instance single_inst = random_instance_on(10, 3, set_of({1}), 4);
    const WeakLearner one = coin_on_J_learner(zo3, set_of({1}), single_inst);
    CHECK(loss(zo3, one.train(all_points(single_inst)), single_inst,
               SimplexDist::uniform(10)) == doctest::Approx(0.0));

    // Targets outside J violate the construction.
    CHECK_THROWS_AS(coin_on_J_learner(zo3, set_of({0}), inst), ContractError);
}

TEST_CASE("coin-on-J loss never exceeds V_J on random distributions (seed 3)") {
    Rng rng(3);
    const CostMatrix w = random_cost(3, rng);
    const LabelSet J = full_set(3);
    const Instance inst = random_instance(25, 3, 3);
    const WeakLearner coin = coin_on_J_learner(w, J, inst);
    const Hypothesis h = coin.train(all_points(inst));
    const double v = game_value(w, J).value;
    CHECK(coin.scalar_guarantee() == doctest::Approx(v));
    for (int t = 0; t < 20; ++t)
        CHECK(loss(w, h, inst, ct::random_dist(25, rng)) <= v + 1e-9);
    // Point-independence: the stored guess drives every point.
    for (int x = 1; x < inst.domain_size; ++x)
        for (int y = 0; y < 3; ++y) CHECK(h.prob(x, y) == h.prob(0, y));
}

TEST_CASE("planted noise at z = 0 returns the target") {
    const Instance inst = ten_point_binary();
    const WeakLearner learner = exact_learner(CostMatrix::zero_one(2), inst);
    const Hypothesis h = learner.train(all_points(inst));
    REQUIRE(h.kind == Hypothesis::Kind::Deterministic);
    CHECK(h.labels == inst.target);
}

TEST_CASE("planted noise packs exactly three errors at z = 0.35 on ten uniform points") {
    const Instance inst = ten_point_binary();
    const WeakLearner learner = planted_noise_learner(CostMatrix::zero_one(2), 0.35, inst);
    const Hypothesis h = learner.train(all_points(inst));
    int errors = 0;
    for (int x = 0; x < 10; ++x)
        if (h.labels[x] != inst.target[x]) ++errors;
    CHECK(errors == 3);
    CHECK(empirical_loss(CostMatrix::zero_one(2), h, inst, all_points(inst)) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("planted noise respects its budget on random query distributions") {
    Rng rng(6021);
    const Instance inst = random_instance(60, 3, 88);
    const CostMatrix w = random_cost(3, rng);
    const double z = 0.3;
    const WeakLearner learner = planted_noise_learner(w, z, inst);
    for (int t = 0; t < 100; ++t) {
        const std::vector<int> sample = draw_points(200, 60, rng);
        const Hypothesis h = learner.train(sample);
        CHECK(empirical_loss(w, h, inst, sample) <= z + 1e-12);
    }
}

TEST_CASE("planted noise returns the target when z is below every reachable cost") {
    const Instance inst = ten_point_binary();
    // Each error costs at least 0.3 * (1/10) = 0.03 under the uniform sample.
    const CostMatrix w = CostMatrix::binary(0.3, 0.6);
    const WeakLearner learner = planted_noise_learner(w, 0.02, inst);
    const Hypothesis h = learner.train(all_points(inst));
    CHECK(h.labels == inst.target);
}

TEST_CASE("multi-objective planted noise honors every budget simultaneously") {
    Rng rng(31337);
    const Instance inst = random_instance(80, 2, 21);
    const MultiCost pop = MultiCost::population_driven();
    const GuaranteeVector z({0.1, 0.4});
    const WeakLearner learner = planted_noise_learner(pop, z, inst);
    for (int t = 0; t < 50; ++t) {
        const std::vector<int> sample = draw_points(300, 80, rng);
        const Hypothesis h = learner.train(sample);
        for (int i = 0; i < 2; ++i)
            CHECK(empirical_loss(pop.costs[i], h, inst, sample) <= z[i] + 1e-12);
    }
}

TEST_CASE("declared guarantees hold empirically at the m0 schedule") {
    // Failure fraction over random query distributions stays within 2 delta.
    const double eps = 0.1, delta = 0.1;
    Rng rng(505);
    const Instance inst = random_instance(50, 2, 77);
    const MultiCost pop = MultiCost::population_driven();
    const GuaranteeVector z({0.3, 0.3});
    const WeakLearner coin = coin_trivial_learner(pop, z, inst);
    const int m = coin.m0(eps, delta);
    int failures = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const SimplexDist D = ct::random_dist(50, rng);
        std::vector<double> cdf(50);
        double acc = 0.0;
        for (int x = 0; x < 50; ++x) { acc += D[x]; cdf[x] = acc; }
        std::vector<int> sample(m);
        for (int i = 0; i < m; ++i) sample[i] = sample_cdf(cdf, uniform01(rng) * acc);
        const Hypothesis h = coin.train(sample);
        const std::vector<double> losses = loss(pop, h, inst, D);
        if (losses[0] > z[0] + eps || losses[1] > z[1] + eps) ++failures;
    }
    CHECK(failures <= static_cast<int>(2 * delta * trials));
}

TEST_CASE("pool ERM picks the empirical minimizer") {
    const Instance inst = ten_point_binary();
    const CostMatrix w = CostMatrix::zero_one(2);
    std::vector<int> bad(10, 0), good = inst.target;
    good[0] ^= 1;
    std::vector<Hypothesis> pool{Hypothesis::deterministic(2, bad),
                                 Hypothesis::deterministic(2, good)};
    const WeakLearner erm = pool_erm_learner(w, pool, inst);
    const Hypothesis h = erm.train(all_points(inst));
    CHECK(h.labels == good);
}

TEST_CASE("instance serialization constraints") {
    Instance inst;
    inst.domain_size = 3;
    inst.k = 2;
    inst.target = {0, 1, 2};
    CHECK_THROWS_AS(inst.validate(), InputError);
}
