#include "costboost/attainability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "costboost/errors.hpp"
#include "costboost/grids.hpp"
#include "costboost/simplex.hpp"

namespace costboost {

long long simplex_grid_size(int dim, int resolution) {
    // C(resolution + dim - 1, dim - 1)
    long long n = 1;
    for (int i = 1; i <= dim - 1; ++i) n = n * (resolution + i) / i;
    return n;
}

MultiCost MultiCost::population_driven() {
    CostMatrix w_neg = CostMatrix::zeros(2);
    w_neg.at(0, 1) = 1.0;  // predict -1, truth +1
    CostMatrix w_pos = CostMatrix::zeros(2);
    w_pos.at(1, 0) = 1.0;  // predict +1, truth -1
    return MultiCost(std::vector<CostMatrix>{w_neg, w_pos});
}

void MultiCost::validate() const {
    if (costs.empty() || costs.size() > 8)
        throw InputError("MultiCost: need 1 <= r <= 8 objectives, got " +
                         std::to_string(costs.size()));
    for (const CostMatrix& w : costs) {
        w.validate();
        if (w.k != costs.front().k)
            throw InputError("MultiCost: objectives disagree on k");
    }
}

void GuaranteeVector::validate() const {
    if (z.empty()) throw InputError("GuaranteeVector: empty");
    for (double zi : z)
        if (!(zi >= 0.0) || zi > 1.0)
            throw InputError("GuaranteeVector: entry outside [0,1]");
}

CostMatrix scalarize(const MultiCost& w, const SimplexDist& alpha) {
    w.validate();
    alpha.validate(1e-9);
    if (alpha.size() != w.r()) throw InputError("scalarize: alpha dimension != r");
    CostMatrix out = CostMatrix::zeros(w.k());
    for (int i = 0; i < w.r(); ++i) {
        const double a = alpha[i];
        if (a == 0.0) continue;
        for (std::size_t e = 0; e < out.entries.size(); ++e)
            out.entries[e] += a * w.costs[i].entries[e];
    }
    return out;
}

double scalarize(const GuaranteeVector& z, const SimplexDist& alpha) {
    if (alpha.size() != z.r()) throw InputError("scalarize: alpha dimension != r");
    double out = 0.0;
    for (int i = 0; i < z.r(); ++i) out += alpha[i] * z[i];
    return out;
}

namespace {

// Environment plays q supported on J; per-objective costs of predicting i are
// cbar[l][i] = sum_{j in J} q_j w_l(i, j).
std::vector<std::vector<double>> objective_columns(const MultiCost& w, LabelSet J,
                                                   const std::vector<double>& q_on_J) {
    const int k = w.k();
    const int r = w.r();
    const std::vector<int> members = labels_of(J);
    std::vector<std::vector<double>> cbar(r, std::vector<double>(k, 0.0));
    for (int l = 0; l < r; ++l)
        for (int i = 0; i < k; ++i) {
            double c = 0.0;
            for (std::size_t idx = 0; idx < members.size(); ++idx)
                c += q_on_J[idx] * w.costs[l](i, members[idx]);
            cbar[l][i] = c;
        }
    return cbar;
}

// min_p max_l (w_l(p, q) - z_l), with the achieving p.
struct ResponseResult {
    double violation = 0.0;
    std::vector<double> p;
    std::vector<double> costs;
};

ResponseResult best_response(const MultiCost& w, const GuaranteeVector& z,
                             const std::vector<std::vector<double>>& cbar) {
    const int k = w.k();
    const int r = w.r();
    // Variables p_0..p_{k-1} >= 0 and a free slack s.
    LinearProgram lp = LinearProgram::with_vars(k + 1);
    lp.set_bounds(k, -kInf, kInf);
    lp.objective[k] = 1.0;
    for (int l = 0; l < r; ++l) {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) row[i] = cbar[l][i];
        row[k] = -1.0;
        lp.add_constraint(std::move(row), ConstraintSense::LessEq, z[l]);
    }
    {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) row[i] = 1.0;
        lp.add_constraint(std::move(row), ConstraintSense::Equal, 1.0);
    }
    const LpSolution sol = solve(lp);
    if (!sol.optimal())
        throw NumericError("attainability response LP reported " + to_string(sol.status));
    ResponseResult res;
    res.violation = sol.optimal_value;
    res.p.assign(sol.primal.begin(), sol.primal.begin() + k);
    res.costs.resize(r);
    for (int l = 0; l < r; ++l) {
        double c = 0.0;
        for (int i = 0; i < k; ++i) c += res.p[i] * cbar[l][i];
        res.costs[l] = c;
    }
    return res;
}

// At a violating q, the transposed game  max_{alpha in simplex(r)} min_i
// sum_l alpha_l (cbar[l][i] - z_l)  yields the separating alpha: its value
// lower-bounds V_J(w_alpha) - <alpha, z>.
SimplexDist separating_alpha_at(const MultiCost& w, const GuaranteeVector& z,
                                const std::vector<std::vector<double>>& cbar, double& value) {
    const int k = w.k();
    const int r = w.r();
    LinearProgram lp = LinearProgram::with_vars(r + 1, /*maximize=*/true);
    lp.set_bounds(r, -kInf, kInf);
    lp.objective[r] = 1.0;
    for (int i = 0; i < k; ++i) {
        std::vector<double> row(r + 1, 0.0);
        for (int l = 0; l < r; ++l) row[l] = cbar[l][i] - z[l];
        row[r] = -1.0;
        lp.add_constraint(std::move(row), ConstraintSense::GreaterEq, 0.0);
    }
    {
        std::vector<double> row(r + 1, 0.0);
        for (int l = 0; l < r; ++l) row[l] = 1.0;
        lp.add_constraint(std::move(row), ConstraintSense::Equal, 1.0);
    }
    const LpSolution sol = solve(lp);
    if (!sol.optimal())
        throw NumericError("attainability witness LP reported " + to_string(sol.status));
    value = sol.optimal_value;
    SimplexDist alpha(std::vector<double>(sol.primal.begin(), sol.primal.begin() + r));
    alpha.normalize();
    return alpha;
}

struct SweepResult {
    bool attainable = true;
    SimplexDist worst_alpha;
    double worst_gap = -kInf;  // max over grid of V_J(w_alpha) - <alpha, z>
};

SweepResult duality_sweep(const MultiCost& w, const GuaranteeVector& z, LabelSet J,
                          const AttainabilityConfig& cfg) {
    SweepResult out;
    const int r = w.r();
    enumerate_simplex_grid(r, cfg.alpha_resolution(r), [&](const std::vector<double>& a) {
        SimplexDist alpha(a);
        const double gap = game_value(scalarize(w, alpha), J).value - scalarize(z, alpha);
        if (gap > out.worst_gap) {
            out.worst_gap = gap;
            out.worst_alpha = alpha;
        }
    });
    out.attainable = out.worst_gap <= cfg.slack_tol;
    return out;
}

void check_inputs(const MultiCost& w, const GuaranteeVector& z, LabelSet J) {
    w.validate();
    z.validate();
    if (z.r() != w.r()) throw InputError("attainability: z dimension != r");
    if (J == 0) throw InputError("attainability: empty subset J");
    if (J >= (LabelSet{1} << w.k())) throw InputError("attainability: J contains labels >= k");
}

AttainabilityVerdict decide_grid(const MultiCost& w, const GuaranteeVector& z, LabelSet J,
                                 const AttainabilityConfig& cfg) {
    AttainabilityVerdict verdict;
    verdict.subset = J;
    const int jsize = set_size(J);
    const int resolution = cfg.q_resolution(jsize);
    const long long total = simplex_grid_size(jsize, resolution);
    const long long keep_every = std::max(1LL, total / std::max(1, cfg.certificate_samples));

    bool ok = true;
    double worst = -kInf;
    long long index = 0;
    std::vector<double> bad_q;
    enumerate_simplex_grid(jsize, resolution, [&](const std::vector<double>& q) {
        if (!ok) return;
        const auto cbar = objective_columns(w, J, q);
        const ResponseResult res = best_response(w, z, cbar);
        worst = std::max(worst, res.violation);
        if (res.violation > cfg.slack_tol) {
            ok = false;
            bad_q = q;
            return;
        }
        if (index % keep_every == 0)
            verdict.certificate.push_back(GridWitness{q, res.p, res.costs});
        ++index;
    });
    verdict.worst_violation = worst;
    verdict.attainable = ok;
    if (!ok) {
        verdict.certificate.clear();
        const auto cbar = objective_columns(w, J, bad_q);
        double sep = 0.0;
        verdict.separating_alpha = separating_alpha_at(w, z, cbar, sep);
        verdict.separation = sep;
    }
    return verdict;
}

AttainabilityVerdict decide_sweep(const MultiCost& w, const GuaranteeVector& z, LabelSet J,
                                  const AttainabilityConfig& cfg) {
    AttainabilityVerdict verdict;
    verdict.subset = J;
    const SweepResult sweep = duality_sweep(w, z, J, cfg);
    verdict.attainable = sweep.attainable;
    verdict.worst_violation = sweep.worst_gap;
    if (!sweep.attainable) {
        verdict.separating_alpha = sweep.worst_alpha;
        verdict.separation = sweep.worst_gap;
    } else {
        // Sample a coarse q grid for the certificate.
        const int jsize = set_size(J);
        const int resolution = std::max(2, 12 / jsize);
        enumerate_simplex_grid(jsize, resolution, [&](const std::vector<double>& q) {
            if (static_cast<int>(verdict.certificate.size()) >= cfg.certificate_samples) return;
            const auto cbar = objective_columns(w, J, q);
            const ResponseResult res = best_response(w, z, cbar);
            verdict.certificate.push_back(GridWitness{q, res.p, res.costs});
        });
    }
    return verdict;
}

} // namespace

AttainabilityVerdict is_dice_attainable(const MultiCost& w, const GuaranteeVector& z,
                                        LabelSet J, const AttainabilityConfig& cfg) {
    check_inputs(w, z, J);
    AttainabilityVerdict verdict;
    if (cfg.mode == DecisionMode::Grid) {
        if (set_size(J) > 5)
            throw CapacityError(
                "is_dice_attainable: |J| > 5 exceeds the q-grid capacity; "
                "rerun with DecisionMode::DualitySweep");
        verdict = decide_grid(w, z, J, cfg);
    } else {
        verdict = decide_sweep(w, z, J, cfg);
    }
    if (cfg.cross_check) {
        if (cfg.mode == DecisionMode::Grid)
            verdict.duality_decision = duality_sweep(w, z, J, cfg).attainable;
        else if (set_size(J) <= 5)
            verdict.duality_decision = decide_grid(w, z, J, cfg).attainable;
    }
    return verdict;
}

AttainabilityVerdict is_coin_attainable(const MultiCost& w, const GuaranteeVector& z,
                                        const AttainabilityConfig& cfg) {
    w.validate();
    return is_dice_attainable(w, z, full_set(w.k()), cfg);
}

AvoidedSets avoided_sets(const MultiCost& w, const GuaranteeVector& z,
                         const AttainabilityConfig& cfg) {
    w.validate();
    z.validate();
    const int k = w.k();
    if (k > kMaxLadderLabels)
        throw CapacityError("avoided_sets: k exceeds the subset-enumeration cap k <= 12");
    const LabelSet all = full_set(k);

    AvoidedSets out;
    std::vector<bool> avoided(all + 1, false);
    for (LabelSet J = 1; J <= all; ++J) {
        if (set_size(J) == 1) continue;  // singletons: p = delta_y attains cost 0
        // Avoidance is monotone upward in J, so an avoided subset settles it.
        bool known = false;
        for (LabelSet sub = (J - 1) & J; sub; sub = (sub - 1) & J) {
            if (avoided[sub]) {
                avoided[J] = true;
                known = true;
                break;
            }
        }
        if (!known) {
            AttainabilityConfig local = cfg;
            local.mode = set_size(J) <= 5 ? DecisionMode::Grid : DecisionMode::DualitySweep;
            local.cross_check = false;
            local.certificate_samples = 1;
            avoided[J] = !is_dice_attainable(w, z, J, local).attainable;
        }
        if (avoided[J]) out.all.push_back(J);
    }
    for (LabelSet J : out.all) {
        bool minimal = true;
        for (LabelSet sub = (J - 1) & J; sub; sub = (sub - 1) & J) {
            if (avoided[sub]) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.minimal.push_back(J);
    }
    return out;
}

bool precedes(const MultiCost& w, const GuaranteeVector& z, const GuaranteeVector& z_prime,
              const AttainabilityConfig& cfg) {
    if (z.r() != z_prime.r()) throw InputError("precedes: guarantee dimensions differ");
    const AvoidedSets av_z = avoided_sets(w, z, cfg);
    const AvoidedSets av_zp = avoided_sets(w, z_prime, cfg);
    std::vector<bool> in_z(full_set(w.k()) + 1, false);
    for (LabelSet J : av_z.all) in_z[J] = true;
    for (LabelSet J : av_zp.all)
        if (!in_z[J]) return false;
    return true;
}

std::vector<BoundaryPoint> trace_boundary(const MultiCost& w, int resolution,
                                          const AttainabilityConfig& cfg) {
    w.validate();
    if (w.r() != 2) throw InputError("trace_boundary: requires r = 2");
    if (resolution < 2) throw InputError("trace_boundary: resolution must be >= 2");

    auto attainable = [&](double z1, double z2) {
        return is_coin_attainable(w, GuaranteeVector({z1, z2}), cfg).attainable;
    };

    std::vector<BoundaryPoint> out;
    out.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double z1 = static_cast<double>(i) / resolution;
        BoundaryPoint pt;
        pt.z1 = z1;
        if (!attainable(z1, 1.0)) {
            out.push_back(pt);
            continue;
        }
        pt.found = true;
        if (attainable(z1, 0.0)) {
            pt.z2 = 0.0;
        } else {
            double lo = 0.0, hi = 1.0;
            while (hi - lo > 1e-4) {
                const double mid = 0.5 * (lo + hi);
                if (attainable(z1, mid)) hi = mid;
                else lo = mid;
            }
            pt.z2 = hi;  // attainable side: the region is closed
        }
        out.push_back(pt);
    }
    return out;
}

double envelope_check(const MultiCost& w, int alpha_grid, const AttainabilityConfig& cfg) {
    w.validate();
    if (w.r() != 2) throw InputError("envelope_check: requires r = 2");
    if (alpha_grid < 2) throw InputError("envelope_check: alpha_grid must be >= 2");
    const LabelSet all = full_set(w.k());

    // V(w_alpha) is independent of z; precompute over the alpha grid once.
    std::vector<std::pair<std::vector<double>, double>> halfspaces;
    halfspaces.reserve(alpha_grid + 1);
    enumerate_simplex_grid(2, alpha_grid, [&](const std::vector<double>& a) {
        halfspaces.emplace_back(a, game_value(scalarize(w, SimplexDist(a)), all).value);
    });

    auto member_dual = [&](double z1, double z2) {
        for (const auto& [a, v] : halfspaces)
            if (a[0] * z1 + a[1] * z2 < v - cfg.slack_tol) return false;
        return true;
    };
    auto member_grid = [&](double z1, double z2) {
        return is_coin_attainable(w, GuaranteeVector({z1, z2}), cfg).attainable;
    };
    auto transition = [&](auto&& member, double z1) -> double {
        if (!member(z1, 1.0)) return 2.0;  // sentinel: no attainable z2
        if (member(z1, 0.0)) return 0.0;
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-4) {
            const double mid = 0.5 * (lo + hi);
            if (member(z1, mid)) hi = mid;
            else lo = mid;
        }
        return hi;
    };

    const int samples = 100;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double z1 = static_cast<double>(i) / samples;
        const double by_grid = transition(member_grid, z1);
        const double by_dual = transition(member_dual, z1);
        worst = std::max(worst, std::fabs(by_grid - by_dual));
    }
    return worst;
}

} // namespace costboost
