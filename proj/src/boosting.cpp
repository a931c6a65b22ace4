#include "costboost/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "costboost/errors.hpp"
#include "costboost/grids.hpp"
#include "costboost/simplex.hpp"

namespace costboost {

void BoostConfig::validate() const {
    if (T < 0 || m_hat < 0) throw InputError("BoostConfig: T and m_hat must be >= 0");
    if (eta < 0.0 || sigma < 0.0) throw InputError("BoostConfig: eta and sigma must be >= 0");
    if (delta <= 0.0 || delta >= 1.0) throw InputError("BoostConfig: delta must be in (0,1)");
    if (max_rounds < 1) throw InputError("BoostConfig: max_rounds must be >= 1");
}

SimplexDist Ensemble::vote_profile(int x) const {
    std::vector<double> p(k);
    for (int y = 0; y < k; ++y) p[y] = vote_fraction(x, y);
    return SimplexDist(std::move(p));
}

int ListFunction::max_list_size() const {
    int m = 0;
    for (LabelSet J : lists) m = std::max(m, set_size(J));
    return m;
}

ListFunction ListFunction::from_ensemble(const Ensemble& ensemble, const CostMatrix& w,
                                         double bound) {
    ListFunction mu;
    mu.k = ensemble.k;
    mu.domain_size = ensemble.domain_size;
    mu.w = w;
    mu.bound = bound;
    mu.F.resize(static_cast<std::size_t>(mu.domain_size) * mu.k);
    mu.lists.resize(mu.domain_size);
    for (int x = 0; x < mu.domain_size; ++x) {
        for (int y = 0; y < mu.k; ++y)
            mu.F[static_cast<std::size_t>(x) * mu.k + y] = ensemble.vote_fraction(x, y);
        LabelSet J = 0;
        for (int y = 0; y < mu.k; ++y) {
            double score = 0.0;
            for (int l = 0; l < mu.k; ++l)
                score += mu.F[static_cast<std::size_t>(x) * mu.k + l] * w(l, y);
            if (score <= bound + 1e-12) J |= LabelSet{1} << y;
        }
        mu.lists[x] = J;
    }
    return mu;
}

ListFunction ListFunction::full(const CostMatrix& w, int domain_size) {
    ListFunction mu;
    mu.k = w.k;
    mu.domain_size = domain_size;
    mu.w = w;
    mu.bound = 1.0;
    mu.F.assign(static_cast<std::size_t>(domain_size) * w.k, 1.0 / w.k);
    mu.lists.assign(domain_size, full_set(w.k));
    return mu;
}

namespace {

struct HedgeOutcome {
    Ensemble ensemble;
    std::vector<double> round_losses;
    RegretLedger regret;
};

// Alg. 1 / Alg. 3 core loop: multiplicative weights over sample indices with
// update factor e^{eta w(h_t(x_i), y_i)}, reweighted draws of m_hat examples,
// one learner call per round. Weights live in log space.
HedgeOutcome run_hedge(const CostMatrix& w, const WeakLearner& learner, const Instance& inst,
                       const std::vector<int>& sample, int T, double eta, int m_hat,
                       Rng& rng) {
    const int m = static_cast<int>(sample.size());
    const int n = inst.domain_size;
    const int k = inst.k;

    std::vector<double> cum(m, 0.0);      // cumulative loss per sample index
    std::vector<double> weights(m), cdf(m);
    std::vector<int> draw_points(m_hat);

    HedgeOutcome out;
    out.ensemble.k = k;
    out.ensemble.domain_size = n;
    out.ensemble.T = T;
    out.ensemble.votes.assign(static_cast<std::size_t>(n) * k, 0);
    out.round_losses.reserve(T);

    double env_loss_total = 0.0;
    for (int t = 0; t < T; ++t) {
        double max_cum = cum[0];
        for (int i = 1; i < m; ++i) max_cum = std::max(max_cum, cum[i]);
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            weights[i] = std::exp(eta * (cum[i] - max_cum));
            total += weights[i];
            cdf[i] = total;
        }
        const double inv_total = 1.0 / total;

        for (int d = 0; d < m_hat; ++d) {
            const double u = uniform01(rng) * total;
            draw_points[d] = sample[sample_cdf(cdf, u)];
        }
        const Hypothesis h_raw = learner.train(draw_points);
        const std::vector<int> h = h_raw.realize(n, rng);

        double env_loss = 0.0;
        for (int i = 0; i < m; ++i) {
            const int x = sample[i];
            const double li = w(h[x], inst.label(x));
            env_loss += weights[i] * inv_total * li;
            cum[i] += li;
        }
        env_loss_total += env_loss;
        out.round_losses.push_back(env_loss);
        for (int x = 0; x < n; ++x)
            ++out.ensemble.votes[static_cast<std::size_t>(x) * k + h[x]];
    }

    out.regret.bound = std::sqrt(2.0 * std::log(static_cast<double>(m)) / T);
    out.regret.avg_environment_loss = env_loss_total / T;
    double worst = 0.0;
    for (int i = 0; i < m; ++i) worst = std::max(worst, cum[i] / T);
    out.regret.max_avg_index_loss = worst;
    out.regret.max_gap = worst - out.regret.avg_environment_loss - out.regret.bound;
    return out;
}

int derived_rounds(double ln_m, double denom_sq, double scale, const BoostConfig& cfg) {
    const double raw = scale * ln_m / denom_sq;
    const int T = std::max(1, static_cast<int>(std::ceil(raw)));
    if (T > cfg.max_rounds)
        throw InputError("derived T = " + std::to_string(T) +
                         " exceeds max_rounds; the margin is too small at this sample "
                         "size (override T/m_hat or raise max_rounds)");
    return T;
}

void check_boost_inputs(const CostMatrix& w, const WeakLearner& learner, const Instance& inst,
                        const std::vector<int>& sample) {
    w.validate();
    inst.validate();
    if (w.k != inst.k) throw InputError("boost: cost k != instance k");
    if (learner.instance().domain_size != inst.domain_size)
        throw InputError("boost: learner bound to a different instance");
    if (sample.size() < 2) throw InputError("boost: need a sample of at least 2 points");
    for (int x : sample)
        if (x < 0 || x >= inst.domain_size) throw InputError("boost: sample point out of domain");
}

} // namespace

BinaryBoostResult boost_binary(const CostMatrix& w, const WeakLearner& learner, double z,
                               const Instance& inst, const std::vector<int>& sample,
                               BoostConfig cfg) {
    cfg.validate();
    check_boost_inputs(w, learner, inst, sample);
    if (w.k != 2) throw InputError("boost_binary: requires k = 2");
    if (z < 0.0) throw InputError("boost_binary: z must be nonnegative");

    const double v = game_value(w, full_set(2)).value;
    const double gamma = v - z;
    if (gamma <= 0.0)
        throw ContractError("boost_binary: z = " + std::to_string(z) +
                            " is at or above the boostability threshold V(w) = " +
                            std::to_string(v) + "; (w, z) is trivially attainable");

    const int m = static_cast<int>(sample.size());
    const double ln_m = std::log(static_cast<double>(m));
    const int T = cfg.T > 0 ? cfg.T : derived_rounds(ln_m, gamma * gamma, 18.0, cfg);
    const double eta = cfg.eta > 0 ? cfg.eta : std::max(std::sqrt(2.0 * ln_m / T), 1e-9);
    const int m_hat = cfg.m_hat > 0 ? cfg.m_hat : learner.m0(gamma / 3.0, cfg.delta / T);

    Rng rng(derive_seed(cfg.seed, 0xB1AA5));
    HedgeOutcome hedge = run_hedge(w, learner, inst, sample, T, eta, m_hat, rng);

    const double w_minus = w(0, 1);
    const double w_plus = w(1, 0);
    std::vector<int> labels(inst.domain_size);
    for (int x = 0; x < inst.domain_size; ++x) {
        const double f_neg = hedge.ensemble.vote_fraction(x, 0);
        const double f_pos = hedge.ensemble.vote_fraction(x, 1);
        labels[x] = (w_minus * f_neg < w_plus * f_pos) ? 1 : 0;
    }

    BinaryBoostResult res;
    res.hypothesis = Hypothesis::deterministic(2, std::move(labels));
    res.ensemble = std::move(hedge.ensemble);

    BoostReport& rep = res.report;
    rep.algorithm = "boost-binary";
    rep.T = T;
    rep.eta = eta;
    rep.m_hat = m_hat;
    rep.sigma = 0.0;
    rep.seed = cfg.seed;
    rep.delta = cfg.delta;
    rep.sample_size = m;
    rep.z = z;
    rep.gamma = gamma;
    rep.round_learner_losses = std::move(hedge.round_losses);
    rep.regret = hedge.regret;

    bool consistent = true;
    bool exclusive = true;
    for (int x : sample) {
        if (res.hypothesis.labels[x] != inst.label(x)) consistent = false;
        const bool neg_low = w_minus * res.ensemble.vote_fraction(x, 0) < v - 1e-12;
        const bool pos_low = w_plus * res.ensemble.vote_fraction(x, 1) < v - 1e-12;
        if (neg_low == pos_low) exclusive = false;
    }
    rep.consistent = consistent;
    rep.mutual_exclusion = exclusive;
    return res;
}

AdaptiveBoostResult boost_binary_adaptive(const CostMatrix& w, const WeakLearner& learner,
                                          const Instance& inst, const std::vector<int>& sample,
                                          BoostConfig cfg, double gamma0, int max_halvings) {
    if (gamma0 <= 0.0) throw InputError("boost_binary_adaptive: gamma0 must be positive");
    const double v = game_value(w, full_set(2)).value;
    double gamma = std::min(gamma0, v);
    for (int attempt = 1; attempt <= max_halvings + 1; ++attempt) {
        BoostConfig local = cfg;
        local.seed = derive_seed(cfg.seed, 0xADA0 + attempt);
        const double z_eff = v - gamma;
        BinaryBoostResult res = boost_binary(w, learner, z_eff, inst, sample, local);
        if (res.report.consistent)
            return AdaptiveBoostResult{std::move(res), gamma, attempt};
        gamma *= 0.5;
    }
    throw ContractError("boost_binary_adaptive: no consistent rule after " +
                        std::to_string(max_halvings) + " halvings; learner appears "
                        "non-boostable under w");
}

ListBoostResult boost_to_list(const CostMatrix& w, const WeakLearner& learner, double z,
                              const Instance& inst, const std::vector<int>& sample,
                              BoostConfig cfg) {
    cfg.validate();
    check_boost_inputs(w, learner, inst, sample);
    if (z < 0.0) throw InputError("boost_to_list: z must be nonnegative");

    double sigma = cfg.sigma;
    double gamma = 0.0;
    if (sigma == 0.0) {
        gamma = margin(w, z);
        if (gamma <= 0.0)
            throw InputError("boost_to_list: sigma = 0 and the margin at z is zero; "
                             "pass an explicit sigma > 0");
        sigma = 2.0 * gamma / 3.0;
    }

    const int m = static_cast<int>(sample.size());
    const double ln_m = std::log(static_cast<double>(m));
    const int T = cfg.T > 0 ? cfg.T : derived_rounds(ln_m, sigma * sigma, 8.0, cfg);
    const double eta = cfg.eta > 0 ? cfg.eta : std::max(std::sqrt(2.0 * ln_m / T), 1e-9);
    const int m_hat = cfg.m_hat > 0 ? cfg.m_hat : learner.m0(sigma / 2.0, cfg.delta / T);

    Rng rng(derive_seed(cfg.seed, 0x1157));
    HedgeOutcome hedge = run_hedge(w, learner, inst, sample, T, eta, m_hat, rng);

    ListBoostResult res;
    res.mu = ListFunction::from_ensemble(hedge.ensemble, w, z + sigma);
    res.ensemble = std::move(hedge.ensemble);

    BoostReport& rep = res.report;
    rep.algorithm = "boost-to-list";
    rep.T = T;
    rep.eta = eta;
    rep.m_hat = m_hat;
    rep.sigma = sigma;
    rep.seed = cfg.seed;
    rep.delta = cfg.delta;
    rep.sample_size = m;
    rep.z = z;
    rep.gamma = gamma;
    rep.round_learner_losses = std::move(hedge.round_losses);
    rep.regret = hedge.regret;

    bool consistent = true;
    for (int x : sample)
        if (!contains(res.mu.list_at(x), inst.label(x))) consistent = false;
    rep.consistent = consistent;
    return res;
}

Hypothesis list_to_weak(const CostMatrix& w, const ListFunction& mu, double z_bound) {
    w.validate();
    if (w.k != mu.k) throw InputError("list_to_weak: cost k != list k");

    std::map<LabelSet, SimplexDist> strategy;
    std::vector<SimplexDist> rows(mu.domain_size);
    for (int x = 0; x < mu.domain_size; ++x) {
        const LabelSet J = mu.list_at(x) == 0 ? full_set(w.k) : mu.list_at(x);
        auto it = strategy.find(J);
        if (it == strategy.end()) {
            const GameValue gv = game_value(w, J);
            if (mu.list_at(x) != 0 && gv.value > z_bound + 1e-9)
                throw ContractError("list_to_weak: list at point " + std::to_string(x) +
                                    " has V_J(w) = " + std::to_string(gv.value) +
                                    " above the declared bound " + std::to_string(z_bound));
            it = strategy.emplace(J, gv.minimax_strategy).first;
        }
        rows[x] = it->second;
    }
    return Hypothesis::stochastic(w.k, std::move(rows));
}

SListBoostResult boost_to_s_list(const CostMatrix& w, const WeakLearner& learner, double z,
                                 const Instance& inst, const std::vector<int>& sample,
                                 BoostConfig cfg) {
    cfg.validate();
    check_boost_inputs(w, learner, inst, sample);
    if (z < 0.0) throw InputError("boost_to_s_list: z must be nonnegative");

    const ThresholdLadder ladder = threshold_ladder(w);
    const int k = w.k;
    if (z >= ladder.v_lower(k) - 1e-12) {
        SListBoostResult res;
        res.mu = ListFunction::full(w, inst.domain_size);
        res.s = k;
        res.gamma = 0.0;
        res.report.algorithm = "boost-to-s-list";
        res.report.sample_size = static_cast<int>(sample.size());
        res.report.z = z;
        res.report.seed = cfg.seed;
        res.report.consistent = true;  // mu = Y contains every label
        return res;
    }

    int s = k;
    for (int cand = 1; cand < k; ++cand) {
        if (z < ladder.v_lower(cand + 1) - 1e-12) {
            s = cand;
            break;
        }
    }
    const double gamma = ladder.v_lower(s + 1) - z;
    BoostConfig local = cfg;
    if (local.sigma == 0.0) local.sigma = 2.0 * gamma / 3.0;

    ListBoostResult inner = boost_to_list(w, learner, z, inst, sample, local);
    SListBoostResult res;
    res.mu = std::move(inner.mu);
    res.s = s;
    res.gamma = gamma;
    res.report = std::move(inner.report);
    res.report.algorithm = "boost-to-s-list";
    res.report.gamma = gamma;
    return res;
}

Hypothesis s_list_to_weak(const CostMatrix& w, const ListFunction& mu, int s) {
    if (s < 1) throw InputError("s_list_to_weak: s must be >= 1");
    for (int x = 0; x < mu.domain_size; ++x)
        if (mu.list_size(x) > s)
            throw ContractError("s_list_to_weak: list at point " + std::to_string(x) +
                                " has size " + std::to_string(mu.list_size(x)) +
                                " > s = " + std::to_string(s));
    return list_to_weak(w, mu, 1.0);
}

ScalarLearnerFn factory_from_learner(const WeakLearner& learner) {
    return [learner](const SimplexDist&, const std::vector<int>& sample_points) {
        return learner.train(sample_points);
    };
}

ScalarLearnerFn factory_from_scalar_planted(const MultiCost& w, const GuaranteeVector& z,
                                            const Instance& inst) {
    w.validate();
    z.validate();
    return [w, z, inst](const SimplexDist& alpha, const std::vector<int>& sample_points) {
        const CostMatrix w_alpha = scalarize(w, alpha);
        const double z_alpha = scalarize(z, alpha);
        return planted_noise_learner(w_alpha, z_alpha, inst).train(sample_points);
    };
}

MoBoostResult boost_mo(const MultiCost& w, const ScalarLearnerFn& factory,
                       const GuaranteeVector& z, const Instance& inst,
                       const std::vector<int>& sample, BoostConfig cfg) {
    cfg.validate();
    w.validate();
    z.validate();
    inst.validate();
    if (w.k() != inst.k) throw InputError("boost_mo: cost k != instance k");
    if (w.r() != z.r()) throw InputError("boost_mo: w and z disagree on r");
    if (sample.empty()) throw InputError("boost_mo: empty sample");

    const int r = w.r();
    const int m = static_cast<int>(sample.size());
    const int n = inst.domain_size;
    const int k = inst.k;

    const int T = cfg.T > 0 ? cfg.T
                  : r == 1 ? 1
                           : std::max(1, static_cast<int>(std::ceil(
                                             100.0 * r * r * std::log(static_cast<double>(r)))));
    const double eta = cfg.eta > 0 ? cfg.eta
                       : r == 1   ? 1e-9
                                  : std::sqrt(2.0 * std::log(static_cast<double>(r)) / T);
    // Default m0 at (1/(10r), 1/(20rT)) with the artifact constant c = 8.
    const int m_hat =
        cfg.m_hat > 0
            ? cfg.m_hat
            : static_cast<int>(std::ceil(8.0 * std::log(20.0 * r * T) * 100.0 * r * r));

    Rng rng(derive_seed(cfg.seed, 0x30B0));
    std::vector<double> cum_viol(r, 0.0);
    std::vector<int> viol_counts(r, 0);
    std::vector<double> alpha_buf(r), cdf;
    std::vector<int> draw_points(m_hat);

    MoBoostResult res;
    res.round_tables.reserve(T);
    double env_total = 0.0;

    for (int t = 0; t < T; ++t) {
        double max_cum = cum_viol[0];
        for (int i = 1; i < r; ++i) max_cum = std::max(max_cum, cum_viol[i]);
        double total = 0.0;
        for (int i = 0; i < r; ++i) {
            alpha_buf[i] = std::exp(eta * (cum_viol[i] - max_cum));
            total += alpha_buf[i];
        }
        for (int i = 0; i < r; ++i) alpha_buf[i] /= total;
        const SimplexDist alpha(alpha_buf);

        for (int d = 0; d < m_hat; ++d)
            draw_points[d] = sample[static_cast<int>(uniform01(rng) * m) % m];
        const Hypothesis h_raw = factory(alpha, draw_points);
        std::vector<int> h = h_raw.realize(n, rng);

        double env = 0.0;
        for (int i = 0; i < r; ++i) {
            double li = 0.0;
            for (int idx : sample) li += w.costs[i](h[idx], inst.label(idx));
            li /= m;
            const double viol = li > z[i] ? 1.0 : 0.0;
            env += alpha[i] * viol;
            cum_viol[i] += viol;
            viol_counts[i] += viol > 0.5 ? 1 : 0;
        }
        env_total += env;
        res.round_tables.push_back(std::move(h));
    }

    std::vector<SimplexDist> rows(n);
    {
        std::vector<double> row(k);
        for (int x = 0; x < n; ++x) {
            std::fill(row.begin(), row.end(), 0.0);
            for (const auto& table : res.round_tables) row[table[x]] += 1.0;
            for (double& v : row) v /= T;
            rows[x] = SimplexDist(row);
        }
    }
    res.mixture = Hypothesis::stochastic(k, std::move(rows));

    MoBoostReport& rep = res.report;
    rep.T = T;
    rep.eta = eta;
    rep.m_hat = m_hat;
    rep.seed = cfg.seed;
    rep.r = r;
    rep.sample_size = m;
    rep.z = z.z;
    rep.violation_counts = viol_counts;
    rep.violation_fractions.resize(r);
    for (int i = 0; i < r; ++i)
        rep.violation_fractions[i] = viol_counts[i] / static_cast<double>(T);
    rep.regret.bound = r == 1 ? 0.0 : std::sqrt(2.0 * std::log(static_cast<double>(r)) / T);
    rep.regret.avg_environment_loss = env_total / T;
    double worst = 0.0;
    for (int i = 0; i < r; ++i) worst = std::max(worst, cum_viol[i] / T);
    rep.regret.max_avg_index_loss = worst;
    rep.regret.max_gap = worst - rep.regret.avg_environment_loss - rep.regret.bound;
    rep.sample_losses.resize(r);
    for (int i = 0; i < r; ++i)
        rep.sample_losses[i] = empirical_loss(w.costs[i], res.mixture, inst, sample);
    return res;
}

MoBoostResult boost_mo_selected(const MultiCost& w, const ScalarLearnerFn& factory,
                                const GuaranteeVector& z, const Instance& inst,
                                const std::vector<int>& sample,
                                const std::vector<int>& holdout, BoostConfig cfg) {
    if (holdout.empty()) throw InputError("boost_mo_selected: empty holdout");
    const int r = w.r();
    const int q = std::max(1, static_cast<int>(std::ceil(std::log2(2.0 * r / cfg.delta))));

    MoBoostResult best;
    double best_score = kInf;
    int best_idx = -1;
    for (int run = 0; run < q; ++run) {
        BoostConfig local = cfg;
        local.seed = derive_seed(cfg.seed, 0x5E1EC7 + run);
        MoBoostResult cand = boost_mo(w, factory, z, inst, sample, local);
        double score = -kInf;
        cand.report.holdout_losses.resize(r);
        for (int i = 0; i < r; ++i) {
            const double li = empirical_loss(w.costs[i], cand.mixture, inst, holdout);
            cand.report.holdout_losses[i] = li;
            score = std::max(score, li - z[i]);
        }
        if (score < best_score) {
            best_score = score;
            best = std::move(cand);
            best_idx = run;
        }
    }
    best.report.selected_run = best_idx;
    return best;
}

MoToMoResult boost_mo_to_mo(const MultiCost& w, const WeakLearner& learner,
                            const GuaranteeVector& z, const GuaranteeVector& z_prime,
                            const Instance& inst, const std::vector<int>& sample,
                            BoostConfig cfg, const AttainabilityConfig& att_cfg) {
    cfg.validate();
    w.validate();
    z.validate();
    z_prime.validate();
    inst.validate();
    const int r = w.r();
    const int k = w.k();
    if (z.r() != r || z_prime.r() != r) throw InputError("boost_mo_to_mo: dimension mismatch");

    const AvoidedSets av_z = avoided_sets(w, z, att_cfg);
    const AvoidedSets av_zp = avoided_sets(w, z_prime, att_cfg);
    {
        std::vector<bool> in_z(full_set(k) + 1, false);
        for (LabelSet J : av_z.all) in_z[J] = true;
        for (LabelSet J : av_zp.all) {
            if (!in_z[J]) {
                throw ContractError(
                    "boost_mo_to_mo: z does not precede z'; J = {" +
                    [&] {
                        std::string s;
                        for (int y : labels_of(J)) s += std::to_string(y + 1) + ",";
                        if (!s.empty()) s.pop_back();
                        return s;
                    }() +
                    "} is dice-attainable for z but not for z'");
            }
        }
    }

    MoToMoResult res;
    res.report.avoided_minimal = av_zp.minimal;

    if (av_zp.all.empty()) {
        // Every subset attainable for z': in particular z' is coin-attainable,
        // so the trivial learner already meets it. mu = Y throughout.
        res.report.degenerate_trivial = true;
        const WeakLearner coin = coin_trivial_learner(w, z_prime, inst, att_cfg);
        Rng rng(derive_seed(cfg.seed, 0xC01'0));
        res.hypothesis = coin.train(sample);
        res.intersected_lists.assign(inst.domain_size, full_set(k));
        res.report.sample_losses.resize(r);
        for (int i = 0; i < r; ++i)
            res.report.sample_losses[i] =
                empirical_loss(w.costs[i], res.hypothesis, inst, sample);
        return res;
    }

    // One scalarized list booster per minimal avoided subset of z'.
    const int alpha_res = att_cfg.alpha_resolution(r);
    std::vector<ListFunction> list_functions;
    int stage = 0;
    for (LabelSet J : av_zp.minimal) {
        SimplexDist best_alpha;
        double best_gap = -kInf;
        enumerate_simplex_grid(r, alpha_res, [&](const std::vector<double>& a) {
            const SimplexDist alpha(a);
            const double gap =
                game_value(scalarize(w, alpha), J).value - scalarize(z, alpha);
            if (gap > best_gap) {
                best_gap = gap;
                best_alpha = alpha;
            }
        });
        if (best_gap <= 1e-9)
            throw ContractError("boost_mo_to_mo: no grid alpha separates z from D_J; "
                                "z sits on the attainability boundary for an avoided J");

        // Strict-positivity perturbation so the scalarized strong learner also
        // drives every objective with positive weight.
        SimplexDist alpha_J = best_alpha;
        double eps = 0.1;
        for (int halving = 0; halving < 30; ++halving) {
            std::vector<double> pert(r);
            for (int i = 0; i < r; ++i)
                pert[i] = (1.0 - eps) * best_alpha[i] + eps / r;
            const SimplexDist cand(pert);
            const double gap = game_value(scalarize(w, cand), J).value - scalarize(z, cand);
            if (gap > 1e-9) {
                alpha_J = cand;
                break;
            }
            eps *= 0.5;
        }

        const CostMatrix w_alpha = scalarize(w, alpha_J);
        const double z_alpha = scalarize(z, alpha_J);
        const double gamma_J = margin(w_alpha, z_alpha);
        res.report.witness_alphas.push_back(alpha_J.probs);
        res.report.witness_margins.push_back(gamma_J);

        BoostConfig local = cfg;
        local.sigma = 0.0;  // derive 2 gamma_J / 3
        local.seed = derive_seed(cfg.seed, 0x10'000 + stage);
        list_functions.push_back(
            boost_to_list(w_alpha, learner, z_alpha, inst, sample, local).mu);
        ++stage;
    }

    res.intersected_lists.assign(inst.domain_size, full_set(k));
    for (const ListFunction& mu : list_functions)
        for (int x = 0; x < inst.domain_size; ++x) res.intersected_lists[x] &= mu.list_at(x);
    int max_size = 0;
    for (LabelSet J : res.intersected_lists) max_size = std::max(max_size, set_size(J));
    res.report.max_intersected_list_size = max_size;

    // Recombine: for each alpha the intersected lists play the restricted
    // minimax strategy under w_alpha, a (w_alpha, z'_alpha)-learner.
    const std::vector<LabelSet> lists = res.intersected_lists;
    const int domain = inst.domain_size;
    ScalarLearnerFn factory = [w, lists, domain, k](const SimplexDist& alpha,
                                                    const std::vector<int>&) {
        const CostMatrix w_alpha = scalarize(w, alpha);
        std::map<LabelSet, SimplexDist> strategy;
        std::vector<SimplexDist> rows(domain);
        for (int x = 0; x < domain; ++x) {
            const LabelSet J = lists[x] == 0 ? full_set(k) : lists[x];
            auto it = strategy.find(J);
            if (it == strategy.end())
                it = strategy.emplace(J, game_value(w_alpha, J).minimax_strategy).first;
            rows[x] = it->second;
        }
        return Hypothesis::stochastic(k, std::move(rows));
    };

    BoostConfig recomb = cfg;
    recomb.seed = derive_seed(cfg.seed, 0x20'000);
    MoBoostResult mo = boost_mo(w, factory, z_prime, inst, sample, recomb);
    res.hypothesis = std::move(mo.mixture);
    res.report.recombination = std::move(mo.report);
    res.report.sample_losses = res.report.recombination.sample_losses;
    return res;
}

} // namespace costboost
