#ifndef COSTBOOST_BOOSTING_HPP
#define COSTBOOST_BOOSTING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "costboost/attainability.hpp"
#include "costboost/games.hpp"
#include "costboost/learners.hpp"

namespace costboost {

struct BoostConfig {
    int T = 0;          // 0 derives the algorithm default
    double eta = 0.0;   // 0 derives sqrt(2 ln m / T)
    int m_hat = 0;      // 0 derives the learner's m0 at the algorithm's schedule
    double sigma = 0.0; // list boosters; 0 derives (2/3) * margin
    std::uint64_t seed = 0;
    double delta = 0.05;
    double epsilon = 0.02;
    int max_rounds = 500000;  // derived-T guard; raise explicitly for tiny margins

    void validate() const;
};

// Per-index Hedge regret, recorded on every run:
//   max_i (1/T) sum_t w(h_t(x_i), y_i)  <=  avg_environment_loss + bound,
// with bound = sqrt(2 ln m / T). max_gap is lhs - rhs, nonpositive up to 1e-9.
struct RegretLedger {
    double bound = 0.0;
    double avg_environment_loss = 0.0;
    double max_avg_index_loss = 0.0;
    double max_gap = 0.0;
};

struct BoostReport {
    std::string algorithm;
    int T = 0;
    double eta = 0.0;
    int m_hat = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    int sample_size = 0;
    double z = 0.0;
    double gamma = 0.0;
    std::vector<double> round_learner_losses;  // E_{D_t}[w(h_t)] per round
    RegretLedger regret;
    bool consistent = false;
    std::optional<bool> mutual_exclusion;       // binary rule only
    std::vector<double> holdout_losses;         // filled by callers that hold data out
};

// T realized hypotheses compressed to their vote counts; F(x,y) = votes/T.
struct Ensemble {
    int k = 0;
    int domain_size = 0;
    int T = 0;
    std::vector<int> votes;  // domain_size x k

    double vote_fraction(int x, int y) const {
        return votes[static_cast<std::size_t>(x) * k + y] / static_cast<double>(T);
    }
    SimplexDist vote_profile(int x) const;
};

// mu(x) = { y : sum_l F(x,l) w(l,y) <= bound }, materialized per point.
// Every list satisfies V_mu(x)(w) <= bound by construction.
struct ListFunction {
    int k = 0;
    int domain_size = 0;
    CostMatrix w;
    double bound = 0.0;
    std::vector<double> F;        // domain_size x k vote fractions
    std::vector<LabelSet> lists;  // materialized masks

    LabelSet list_at(int x) const { return lists[x]; }
    int list_size(int x) const { return set_size(lists[x]); }
    int max_list_size() const;
    double vote(int x, int y) const { return F[static_cast<std::size_t>(x) * k + y]; }

    static ListFunction from_ensemble(const Ensemble& ensemble, const CostMatrix& w,
                                      double bound);
    // The constant mu = Y list function (the z >= v_k lower bucket).
    static ListFunction full(const CostMatrix& w, int domain_size);
};

struct BinaryBoostResult {
    Hypothesis hypothesis;  // deterministic over the instance domain
    Ensemble ensemble;
    BoostReport report;
};

// Hedge over sample points against a binary (w, z)-learner; the returned rule
// predicts +1 iff w_- F(x,-1) < w_+ F(x,+1) (ties predict -1). Raises a
// contract error when z >= V(w).
BinaryBoostResult boost_binary(const CostMatrix& w, const WeakLearner& learner, double z,
                               const Instance& inst, const std::vector<int>& sample,
                               BoostConfig cfg);

struct AdaptiveBoostResult {
    BinaryBoostResult result;
    double gamma_used = 0.0;
    int attempts = 0;
};

// Margin-halving wrapper for callers without a trusted margin estimate:
// retries boost_binary with gamma0, gamma0/2, ... until the returned rule is
// consistent with the sample, up to max_halvings.
AdaptiveBoostResult boost_binary_adaptive(const CostMatrix& w, const WeakLearner& learner,
                                          const Instance& inst, const std::vector<int>& sample,
                                          BoostConfig cfg, double gamma0,
                                          int max_halvings = 20);

struct ListBoostResult {
    ListFunction mu;
    Ensemble ensemble;
    BoostReport report;
};

// Same Hedge loop, returning the list function mu_S with bound z + sigma.
// The boundedness V_mu(x)(w) <= z + sigma holds unconditionally; consistency
// (y_i in mu(x_i) for the whole sample) holds with probability 1 - delta.
ListBoostResult boost_to_list(const CostMatrix& w, const WeakLearner& learner, double z,
                              const Instance& inst, const std::vector<int>& sample,
                              BoostConfig cfg);

// Plays the minimax strategy of the game restricted to mu(x) at every point.
// Raises a contract error naming the first x whose list breaks V_J(w) <= z_bound.
// Empty lists fall back to the unrestricted minimax strategy over Y.
Hypothesis list_to_weak(const CostMatrix& w, const ListFunction& mu, double z_bound);

struct SListBoostResult {
    ListFunction mu;
    int s = 0;          // guaranteed maximum list size
    double gamma = 0.0; // v_{s+1,lower} - z (0 for the full-list bucket)
    BoostReport report;
};

// Boosts to lists of size at most s, where s is the smallest integer with
// z < v_{s+1,lower}; when z >= v_{k,lower} the constant full-list function is
// returned without boosting.
SListBoostResult boost_to_s_list(const CostMatrix& w, const WeakLearner& learner, double z,
                                 const Instance& inst, const std::vector<int>& sample,
                                 BoostConfig cfg);

// Minimax play on lists of size at most s; achieves loss <= v_{s,upper} plus
// the miss rate. Oversize lists raise a contract error naming the point.
Hypothesis s_list_to_weak(const CostMatrix& w, const ListFunction& mu, int s);

// A scalarized learner family: alpha plus a training multiset yields a
// hypothesis whose empirical w_alpha-loss is within the declared z_alpha.
using ScalarLearnerFn =
    std::function<Hypothesis(const SimplexDist& alpha, const std::vector<int>& sample_points)>;

ScalarLearnerFn factory_from_learner(const WeakLearner& learner);
ScalarLearnerFn factory_from_scalar_planted(const MultiCost& w, const GuaranteeVector& z,
                                            const Instance& inst);

struct MoBoostReport {
    int T = 0;
    double eta = 0.0;
    int m_hat = 0;
    std::uint64_t seed = 0;
    int r = 0;
    int sample_size = 0;
    std::vector<double> z;
    std::vector<int> violation_counts;        // per objective
    std::vector<double> violation_fractions;  // per objective
    RegretLedger regret;                       // over objectives, bound sqrt(2 ln r / T)
    std::vector<double> sample_losses;         // mixture loss per objective on the sample
    std::vector<double> holdout_losses;        // filled by callers
    int selected_run = -1;                     // best-of-q selection index
};

struct MoBoostResult {
    Hypothesis mixture;  // stochastic: uniform over the T kept rounds
    std::vector<std::vector<int>> round_tables;
    MoBoostReport report;
};

// Hedge over objectives with violation indicators M(h, i) = 1{empirical
// w_i-loss of h on the sample > z_i}; rounds draw from the uniform
// distribution over the sample. r = 1 passes the single learner through.
MoBoostResult boost_mo(const MultiCost& w, const ScalarLearnerFn& factory,
                       const GuaranteeVector& z, const Instance& inst,
                       const std::vector<int>& sample, BoostConfig cfg);

// Best-on-holdout selection among ceil(log2(2r/delta)) independent runs.
MoBoostResult boost_mo_selected(const MultiCost& w, const ScalarLearnerFn& factory,
                                const GuaranteeVector& z, const Instance& inst,
                                const std::vector<int>& sample,
                                const std::vector<int>& holdout, BoostConfig cfg);

struct MoToMoReport {
    std::vector<LabelSet> avoided_minimal;
    std::vector<std::vector<double>> witness_alphas;  // per avoided J
    std::vector<double> witness_margins;              // gamma_J per avoided J
    int max_intersected_list_size = 0;
    bool degenerate_trivial = false;  // av(w, z') empty: coin learner suffices
    MoBoostReport recombination;
    std::vector<double> sample_losses;
};

struct MoToMoResult {
    Hypothesis hypothesis;
    std::vector<LabelSet> intersected_lists;  // per domain point
    MoToMoReport report;
};

// Boosts a (w, z)-learner to a (w, z')-learner for z preceding z': one list
// booster per minimal avoided subset of z' (scalarized by a separating alpha),
// lists intersected, then recombined by boost_mo over the alpha family.
MoToMoResult boost_mo_to_mo(const MultiCost& w, const WeakLearner& learner,
                            const GuaranteeVector& z, const GuaranteeVector& z_prime,
                            const Instance& inst, const std::vector<int>& sample,
                            BoostConfig cfg, const AttainabilityConfig& att_cfg = {});

} // namespace costboost

#endif
