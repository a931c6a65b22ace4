#include "costboost/learners.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "costboost/errors.hpp"
#include "costboost/simplex.hpp"

namespace costboost {

void Instance::validate() const {
    if (domain_size <= 0) throw InputError("Instance: empty domain");
    if (k < 2) throw InputError("Instance: need k >= 2");
    if (static_cast<int>(target.size()) != domain_size)
        throw InputError("Instance: target size != domain_size");
    for (int y : target)
        if (y < 0 || y >= k) throw InputError("Instance: target label out of range");
}

Instance random_instance(int domain_size, int k, std::uint64_t seed) {
    return random_instance_on(domain_size, k, full_set(k), seed);
}

Instance random_instance_on(int domain_size, int k, LabelSet J, std::uint64_t seed) {
    if (J == 0 || J >= (LabelSet{1} << k)) throw InputError("random_instance_on: bad subset");
    const std::vector<int> members = labels_of(J);
    Instance inst;
    inst.domain_size = domain_size;
    inst.k = k;
    inst.target.resize(domain_size);
    Rng rng(derive_seed(seed, 0xA11CE));
    for (int x = 0; x < domain_size; ++x)
        inst.target[x] = members[uniform_int(rng, static_cast<int>(members.size()))];
    return inst;
}

Hypothesis Hypothesis::deterministic(int k, std::vector<int> labels) {
    Hypothesis h;
    h.kind = Kind::Deterministic;
    h.k = k;
    h.labels = std::move(labels);
    return h;
}

Hypothesis Hypothesis::stochastic(int k, std::vector<SimplexDist> rows) {
    Hypothesis h;
    h.kind = Kind::Stochastic;
    h.k = k;
    h.rows = std::move(rows);
    return h;
}

Hypothesis Hypothesis::random_guess(int k, SimplexDist p) {
    p.validate(1e-9);
    Hypothesis h;
    h.kind = Kind::RandomGuess;
    h.k = k;
    h.guess = std::move(p);
    return h;
}

double Hypothesis::prob(int x, int y) const {
    switch (kind) {
        case Kind::Deterministic: return labels[x] == y ? 1.0 : 0.0;
        case Kind::Stochastic: return rows[x][y];
        case Kind::RandomGuess: return guess[y];
    }
    return 0.0;
}

double Hypothesis::point_cost(const CostMatrix& w, int x, int truth) const {
    switch (kind) {
        case Kind::Deterministic: return w(labels[x], truth);
        case Kind::Stochastic: return expected_cost_vs_label(w, rows[x], truth);
        case Kind::RandomGuess: return expected_cost_vs_label(w, guess, truth);
    }
    return 0.0;
}

int Hypothesis::draw(int x, Rng& rng) const {
    if (kind == Kind::Deterministic) return labels[x];
    const SimplexDist& p = kind == Kind::Stochastic ? rows[x] : guess;
    double u = uniform01(rng);
    double acc = 0.0;
    for (int y = 0; y < k; ++y) {
        acc += p[y];
        if (u < acc) return y;
    }
    return k - 1;
}

std::vector<int> Hypothesis::realize(int domain_size, Rng& rng) const {
    std::vector<int> out(domain_size);
    if (kind == Kind::Deterministic) {
        out = labels;
        out.resize(domain_size);
        return out;
    }
    for (int x = 0; x < domain_size; ++x) out[x] = draw(x, rng);
    return out;
}

double loss(const CostMatrix& w, const Hypothesis& h, const Instance& inst,
            const SimplexDist& D) {
    if (D.size() != inst.domain_size) throw InputError("loss: D dimension != domain size");
    double total = 0.0;
    for (int x = 0; x < inst.domain_size; ++x) {
        if (D[x] == 0.0) continue;
        total += D[x] * h.point_cost(w, x, inst.label(x));
    }
    return total;
}

std::vector<double> loss(const MultiCost& w, const Hypothesis& h, const Instance& inst,
                         const SimplexDist& D) {
    std::vector<double> out;
    out.reserve(w.r());
    for (const CostMatrix& wi : w.costs) out.push_back(loss(wi, h, inst, D));
    return out;
}

double empirical_loss(const CostMatrix& w, const Hypothesis& h, const Instance& inst,
                      const std::vector<int>& points) {
    if (points.empty()) throw InputError("empirical_loss: empty point multiset");
    double total = 0.0;
    for (int x : points) total += h.point_cost(w, x, inst.label(x));
    return total / static_cast<double>(points.size());
}

int WeakLearner::m0(double eps, double delta) const {
    if (eps <= 0.0 || delta <= 0.0 || delta >= 1.0)
        throw InputError("m0: need eps > 0 and delta in (0,1)");
    return static_cast<int>(std::ceil(sample_constant_ * std::log(1.0 / delta) / (eps * eps)));
}

namespace {

// Empirical weights of the distinct points in a sample multiset;
// returns (point, weight) sorted by point id.
std::vector<std::pair<int, double>> empirical_weights(const std::vector<int>& sample_points,
                                                      int domain_size) {
    std::vector<int> counts(domain_size, 0);
    for (int x : sample_points) {
        if (x < 0 || x >= domain_size) throw InputError("sample point out of domain");
        ++counts[x];
    }
    std::vector<std::pair<int, double>> out;
    const double inv = 1.0 / static_cast<double>(sample_points.size());
    for (int x = 0; x < domain_size; ++x)
        if (counts[x] > 0) out.emplace_back(x, counts[x] * inv);
    return out;
}

SimplexDist empirical_marginal(const std::vector<int>& sample_points, const Instance& inst) {
    std::vector<double> q(inst.k, 0.0);
    for (int x : sample_points) q[inst.label(x)] += 1.0;
    SimplexDist qd(std::move(q));
    qd.normalize();
    return qd;
}

} // namespace

Hypothesis WeakLearner::train_planted(const std::vector<int>& sample_points) const {
    const int r = guarantee_.r();
    auto weighted = empirical_weights(sample_points, instance_.domain_size);
    std::stable_sort(weighted.begin(), weighted.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<int> h = instance_.target;
    std::vector<double> spent(r, 0.0);
    for (const auto& [x, wgt] : weighted) {
        const int truth = instance_.label(x);
        int best_label = -1;
        double best_total = 0.0;
        for (int j = 0; j < instance_.k; ++j) {
            if (j == truth) continue;
            double total = 0.0;
            bool fits = true;
            for (int l = 0; l < r; ++l) {
                const double c = wgt * guarantee_costs_.costs[l](j, truth);
                if (spent[l] + c > guarantee_[l] + 1e-12) {
                    fits = false;
                    break;
                }
                total += c;
            }
            // Zero-cost flips are never planted: they add nothing to the packed
            // loss and would fire even at z = 0.
            if (fits && total > 0.0 && total > best_total) {
                best_total = total;
                best_label = j;
            }
        }
        if (best_label >= 0) {
            h[x] = best_label;
            for (int l = 0; l < r; ++l)
                spent[l] += wgt * guarantee_costs_.costs[l](best_label, truth);
        }
    }
    return Hypothesis::deterministic(instance_.k, std::move(h));
}

Hypothesis WeakLearner::train_coin_trivial(const std::vector<int>& sample_points) const {
    const SimplexDist qhat = empirical_marginal(sample_points, instance_);
    const int k = instance_.k;
    const int r = guarantee_.r();

    const SimplexDist uniform = SimplexDist::uniform(k);
    bool uniform_ok = true;
    for (int l = 0; l < r && uniform_ok; ++l)
        if (expected_cost(guarantee_costs_.costs[l], uniform, qhat) > guarantee_[l] + 1e-12)
            uniform_ok = false;
    if (uniform_ok) return Hypothesis::random_guess(k, uniform);

    // min_p max_l (w_l(p, qhat) - z_l); coin-attainability makes this <= 0.
    LinearProgram lp = LinearProgram::with_vars(k + 1);
    lp.set_bounds(k, -kInf, kInf);
    lp.objective[k] = 1.0;
    for (int l = 0; l < r; ++l) {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) {
            double c = 0.0;
            for (int j = 0; j < k; ++j) c += qhat[j] * guarantee_costs_.costs[l](i, j);
            row[i] = c;
        }
        row[k] = -1.0;
        lp.add_constraint(std::move(row), ConstraintSense::LessEq, guarantee_[l]);
    }
    {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) row[i] = 1.0;
        lp.add_constraint(std::move(row), ConstraintSense::Equal, 1.0);
    }
    const LpSolution sol = solve(lp);
    if (!sol.optimal() || sol.optimal_value > 1e-6)
        throw ContractError("coin_trivial_learner: no coin meets z at the estimated marginal");
    SimplexDist p(std::vector<double>(sol.primal.begin(), sol.primal.begin() + k));
    p.normalize();
    return Hypothesis::random_guess(k, std::move(p));
}

Hypothesis WeakLearner::train_pool_erm(const std::vector<int>& sample_points) const {
    const CostMatrix& w = guarantee_costs_.costs.front();
    int best = 0;
    double best_loss = kInf;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        const double l = empirical_loss(w, pool_[i], instance_, sample_points);
        if (l < best_loss - 1e-15) {
            best_loss = l;
            best = static_cast<int>(i);
        }
    }
    return pool_[best];
}

Hypothesis WeakLearner::train(const std::vector<int>& sample_points) const {
    if (sample_points.empty()) throw InputError("WeakLearner::train: empty sample");
    switch (behavior_) {
        case Behavior::PlantedNoise: return train_planted(sample_points);
        case Behavior::CoinTrivial: return train_coin_trivial(sample_points);
        case Behavior::CoinOnJ: return Hypothesis::random_guess(instance_.k, stored_guess_);
        case Behavior::PoolERM: return train_pool_erm(sample_points);
    }
    throw InputError("WeakLearner::train: unknown behavior");
}

WeakLearner coin_trivial_learner(const MultiCost& w, const GuaranteeVector& z,
                                 const Instance& inst, const AttainabilityConfig& cfg) {
    w.validate();
    z.validate();
    inst.validate();
    if (w.k() != inst.k) throw InputError("coin_trivial_learner: cost k != instance k");
    if (!is_coin_attainable(w, z, cfg).attainable)
        throw ContractError("coin_trivial_learner: (w, z) is not coin-attainable");
    WeakLearner learner;
    learner.behavior_ = WeakLearner::Behavior::CoinTrivial;
    learner.guarantee_costs_ = w;
    learner.guarantee_ = z;
    learner.instance_ = inst;
    return learner;
}

WeakLearner coin_on_J_learner(const CostMatrix& w, LabelSet J, const Instance& inst) {
    w.validate();
    inst.validate();
    if (w.k != inst.k) throw InputError("coin_on_J_learner: cost k != instance k");
    for (int x = 0; x < inst.domain_size; ++x)
        if (!contains(J, inst.label(x)))
            throw ContractError("coin_on_J_learner: instance target leaves J at point " +
                                std::to_string(x));
    const GameValue gv = game_value(w, J);
    WeakLearner learner;
    learner.behavior_ = WeakLearner::Behavior::CoinOnJ;
    learner.guarantee_costs_ = MultiCost(w);
    learner.guarantee_ = GuaranteeVector({gv.value});
    learner.instance_ = inst;
    learner.stored_guess_ = gv.minimax_strategy;
    learner.subset_ = J;
    return learner;
}

WeakLearner planted_noise_learner(const MultiCost& w, const GuaranteeVector& z,
                                  const Instance& inst) {
    w.validate();
    z.validate();
    inst.validate();
    if (w.r() != z.r()) throw InputError("planted_noise_learner: w and z disagree on r");
    if (w.k() != inst.k) throw InputError("planted_noise_learner: cost k != instance k");
    WeakLearner learner;
    learner.behavior_ = WeakLearner::Behavior::PlantedNoise;
    learner.guarantee_costs_ = w;
    learner.guarantee_ = z;
    learner.instance_ = inst;
    return learner;
}

WeakLearner planted_noise_learner(const CostMatrix& w, double z, const Instance& inst) {
    if (z < 0.0) throw InputError("planted_noise_learner: z must be nonnegative");
    return planted_noise_learner(MultiCost(w), GuaranteeVector({std::min(z, 1.0)}), inst);
}

WeakLearner pool_erm_learner(const CostMatrix& w, std::vector<Hypothesis> pool,
                             const Instance& inst) {
    w.validate();
    inst.validate();
    if (pool.empty()) throw InputError("pool_erm_learner: empty pool");
    WeakLearner learner;
    learner.behavior_ = WeakLearner::Behavior::PoolERM;
    learner.guarantee_costs_ = MultiCost(w);
    learner.guarantee_ = GuaranteeVector({1.0});
    learner.instance_ = inst;
    learner.pool_ = std::move(pool);
    return learner;
}

WeakLearner exact_learner(const CostMatrix& w, const Instance& inst) {
    return planted_noise_learner(w, 0.0, inst);
}

} // namespace costboost
