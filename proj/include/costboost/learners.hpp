#ifndef COSTBOOST_LEARNERS_HPP
#define COSTBOOST_LEARNERS_HPP

#include <cstdint>
#include <vector>

#include "costboost/attainability.hpp"
#include "costboost/games.hpp"
#include "costboost/random.hpp"

namespace costboost {

// A finite learning problem: points 0..domain_size-1 with a ground-truth label each.
struct Instance {
    int domain_size = 0;
    int k = 0;
    std::vector<int> target;  // target[x] in [0, k)

    void validate() const;
    int label(int x) const { return target[x]; }
};

Instance random_instance(int domain_size, int k, std::uint64_t seed);
// Targets drawn uniformly from J (the class J^X realized at desk scale).
Instance random_instance_on(int domain_size, int k, LabelSet J, std::uint64_t seed);

// A predictor over an instance domain. Stochastic rows and random guesses are
// evaluated by exact expectation, never by sampling.
struct Hypothesis {
    enum class Kind { Deterministic, Stochastic, RandomGuess };
    Kind kind = Kind::Deterministic;
    int k = 0;
    std::vector<int> labels;          // Deterministic: per point
    std::vector<SimplexDist> rows;    // Stochastic: per point
    SimplexDist guess;                // RandomGuess: shared across points

    static Hypothesis deterministic(int k, std::vector<int> labels);
    static Hypothesis stochastic(int k, std::vector<SimplexDist> rows);
    static Hypothesis random_guess(int k, SimplexDist p);

    double prob(int x, int y) const;
    // Expected cost of the prediction at x against true label `truth`.
    double point_cost(const CostMatrix& w, int x, int truth) const;
    int draw(int x, Rng& rng) const;
    // Deterministic table over 0..domain_size-1, sampling stochastic rows once.
    std::vector<int> realize(int domain_size, Rng& rng) const;
};

// L_D^w(h) = sum_x D(x) E_{yhat ~ h(x)} w(yhat, f(x)), exact.
double loss(const CostMatrix& w, const Hypothesis& h, const Instance& inst,
            const SimplexDist& D);
std::vector<double> loss(const MultiCost& w, const Hypothesis& h, const Instance& inst,
                         const SimplexDist& D);
// Loss under the empirical distribution of a point multiset.
double empirical_loss(const CostMatrix& w, const Hypothesis& h, const Instance& inst,
                      const std::vector<int>& points);

// Synthetic weak learners. Training is a pure function of the received sample;
// all randomness (drawing samples, realizing stochastic outputs) lives in the
// caller. Guarantees are stored in multi-objective form; r = 1 is the scalar case.
class WeakLearner {
public:
    enum class Behavior { PoolERM, PlantedNoise, CoinTrivial, CoinOnJ };

    Behavior behavior() const { return behavior_; }
    const MultiCost& guarantee_costs() const { return guarantee_costs_; }
    const GuaranteeVector& guarantee() const { return guarantee_; }
    double scalar_guarantee() const { return guarantee_.z.front(); }
    const Instance& instance() const { return instance_; }

    // Sample complexity ceil(c ln(1/delta) / eps^2), default c = 8.
    int m0(double eps, double delta) const;
    double sample_constant() const { return sample_constant_; }
    void set_sample_constant(double c) { sample_constant_ = c; }

    // The stored random guess of a CoinOnJ learner.
    const SimplexDist& stored_guess() const { return stored_guess_; }

    Hypothesis train(const std::vector<int>& sample_points) const;

    friend WeakLearner coin_trivial_learner(const MultiCost&, const GuaranteeVector&,
                                            const Instance&, const AttainabilityConfig&);
    friend WeakLearner coin_on_J_learner(const CostMatrix&, LabelSet, const Instance&);
    friend WeakLearner planted_noise_learner(const MultiCost&, const GuaranteeVector&,
                                             const Instance&);
    friend WeakLearner pool_erm_learner(const CostMatrix&, std::vector<Hypothesis>,
                                        const Instance&);

private:
    Behavior behavior_ = Behavior::PlantedNoise;
    MultiCost guarantee_costs_;
    GuaranteeVector guarantee_;
    Instance instance_;
    double sample_constant_ = 8.0;
    SimplexDist stored_guess_;          // CoinOnJ
    LabelSet subset_ = 0;               // CoinOnJ
    std::vector<Hypothesis> pool_;      // PoolERM

    Hypothesis train_planted(const std::vector<int>& sample_points) const;
    Hypothesis train_coin_trivial(const std::vector<int>& sample_points) const;
    Hypothesis train_pool_erm(const std::vector<int>& sample_points) const;
};

// Estimates the label marginal of its sample and answers with a random guess p
// satisfying w_i(p, qhat) <= z_i for every objective. Requires (w, z) to be
// coin-attainable. Tries the uniform p first; otherwise solves the response LP.
WeakLearner coin_trivial_learner(const MultiCost& w, const GuaranteeVector& z,
                                 const Instance& inst, const AttainabilityConfig& cfg = {});

// Ignores its sample and plays the minimax strategy of the game restricted to J.
// Requires every target label of the instance to lie in J.
WeakLearner coin_on_J_learner(const CostMatrix& w, LabelSet J, const Instance& inst);

// Returns the target labeling except on a greedily chosen set of sample points
// (ascending empirical weight) planted with wrong labels; the planted loss is
// packed as high as possible while staying within every budget z_i. An exact
// (w, z)-learner on each query's empirical distribution.
WeakLearner planted_noise_learner(const MultiCost& w, const GuaranteeVector& z,
                                  const Instance& inst);
WeakLearner planted_noise_learner(const CostMatrix& w, double z, const Instance& inst);

// Empirical-risk minimization over an explicit hypothesis pool.
WeakLearner pool_erm_learner(const CostMatrix& w, std::vector<Hypothesis> pool,
                             const Instance& inst);

// Convenience: the z = 0 planted learner, i.e. the target itself.
WeakLearner exact_learner(const CostMatrix& w, const Instance& inst);

} // namespace costboost

#endif
