#include "costboost/games.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "costboost/errors.hpp"
#include "costboost/simplex.hpp"

namespace costboost {

std::vector<int> labels_of(LabelSet J) {
    std::vector<int> out;
    for (int y = 0; y < 32; ++y)
        if (contains(J, y)) out.push_back(y);
    return out;
}

LabelSet set_of(const std::vector<int>& labels) {
    LabelSet J = 0;
    for (int y : labels) {
        if (y < 0 || y >= 32) throw InputError("label out of range: " + std::to_string(y));
        J |= LabelSet{1} << y;
    }
    return J;
}

SimplexDist SimplexDist::uniform(int n) {
    return SimplexDist(std::vector<double>(n, 1.0 / n));
}

SimplexDist SimplexDist::point_mass(int n, int i) {
    std::vector<double> p(n, 0.0);
    p.at(i) = 1.0;
    return SimplexDist(std::move(p));
}

void SimplexDist::validate(double tol) const {
    if (probs.empty()) throw InputError("SimplexDist: empty");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw InputError("SimplexDist: negative or NaN entry");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > tol)
        throw InputError("SimplexDist: entries sum to " + std::to_string(sum));
}

void SimplexDist::normalize() {
    double sum = 0.0;
    for (double& p : probs) {
        if (p < 0.0 && p > -1e-12) p = 0.0;
        sum += p;
    }
    if (sum <= 0.0) throw InputError("SimplexDist: cannot normalize nonpositive mass");
    for (double& p : probs) p /= sum;
}

CostMatrix CostMatrix::zeros(int k) {
    return CostMatrix(k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.0));
}

CostMatrix CostMatrix::zero_one(int k) {
    CostMatrix w = zeros(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) w.at(i, j) = 1.0;
    return w;
}

CostMatrix CostMatrix::binary(double w_plus, double w_minus) {
    CostMatrix w = zeros(2);
    w.at(1, 0) = w_plus;
    w.at(0, 1) = w_minus;
    return w;
}

double CostMatrix::max_entry() const {
    double m = 0.0;
    for (double e : entries) m = std::max(m, e);
    return m;
}

void CostMatrix::validate() const {
    if (k < 2) throw InputError("CostMatrix: need k >= 2, got " + std::to_string(k));
    if (k > kMaxLadderLabels)
        throw CapacityError("CostMatrix: k = " + std::to_string(k) +
                            " exceeds the desk-scale cap k <= 12");
    if (entries.size() != static_cast<std::size_t>(k) * k)
        throw InputError("CostMatrix: entries size != k*k");
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double e = (*this)(i, j);
            if (!std::isfinite(e)) throw InputError("CostMatrix: non-finite entry");
            if (e < 0.0 || e > 1.0)
                throw InputError("CostMatrix: entry out of [0,1] at (" + std::to_string(i) +
                                 "," + std::to_string(j) + "); rescale costs before loading");
            if (i == j && e != 0.0) throw InputError("CostMatrix: nonzero diagonal");
        }
    }
}

double expected_cost(const CostMatrix& w, const SimplexDist& p, const SimplexDist& q) {
    if (p.size() != w.k || q.size() != w.k)
        throw InputError("expected_cost: distribution dimension != k");
    double total = 0.0;
    for (int i = 0; i < w.k; ++i) {
        if (p[i] == 0.0) continue;
        double row = 0.0;
        for (int j = 0; j < w.k; ++j) row += q[j] * w(i, j);
        total += p[i] * row;
    }
    return total;
}

double expected_cost_vs_label(const CostMatrix& w, const SimplexDist& p, int j) {
    double total = 0.0;
    for (int i = 0; i < w.k; ++i) total += p[i] * w(i, j);
    return total;
}

GameValue game_value(const CostMatrix& w, LabelSet J) {
    w.validate();
    if (J == 0) throw InputError("game_value: empty subset J");
    if (J >= (LabelSet{1} << w.k)) throw InputError("game_value: J contains labels >= k");

    const std::vector<int> members = labels_of(J);
    if (members.size() == 1) {
        // V_{{y}}(w) = 0, attained by predicting y (zero diagonal).
        return GameValue{0.0, SimplexDist::point_mass(w.k, members[0]), J};
    }

    // Variables: p_0..p_{k-1} >= 0, then t >= 0 (w >= 0 keeps t nonnegative).
    const int k = w.k;
    LinearProgram lp = LinearProgram::with_vars(k + 1);
    lp.objective[k] = 1.0;
    for (int j : members) {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) row[i] = w(i, j);
        row[k] = -1.0;
        lp.add_constraint(std::move(row), ConstraintSense::LessEq, 0.0);
    }
    {
        std::vector<double> row(k + 1, 0.0);
        for (int i = 0; i < k; ++i) row[i] = 1.0;
        lp.add_constraint(std::move(row), ConstraintSense::Equal, 1.0);
    }
    const LpSolution sol = solve(lp);
    if (!sol.optimal())
        throw NumericError("game_value: LP reported " + to_string(sol.status));

    SimplexDist p(std::vector<double>(sol.primal.begin(), sol.primal.begin() + k));
    p.normalize();
    return GameValue{sol.optimal_value, std::move(p), J};
}

ThresholdLadder threshold_ladder(const CostMatrix& w) {
    w.validate();
    if (w.k > kMaxLadderLabels)
        throw CapacityError("threshold_ladder: k = " + std::to_string(w.k) +
                            " exceeds the subset-enumeration cap k <= 12");
    const int k = w.k;
    const LabelSet all = full_set(k);

    std::vector<double> value_of(all + 1, 0.0);
    for (LabelSet J = 1; J <= all; ++J) value_of[J] = game_value(w, J).value;

    std::vector<LabelSet> order;
    order.reserve(all);
    for (LabelSet J = 1; J <= all; ++J) order.push_back(J);
    std::stable_sort(order.begin(), order.end(), [&](LabelSet a, LabelSet b) {
        return value_of[a] < value_of[b];
    });

    ThresholdLadder ladder;
    ladder.k = k;
    for (LabelSet J : order) {
        const double v = value_of[J];
        if (ladder.levels.empty() || v > ladder.levels.back() + kLadderDedupTol) {
            ladder.levels.push_back(v);
            ladder.witnesses.emplace_back();
        }
        ladder.witnesses.back().push_back(J);
    }
    // Ties within a level keep ascending-mask order.
    for (auto& ws : ladder.witnesses) std::sort(ws.begin(), ws.end());
    // Singletons pin the first level to exactly 0.
    ladder.levels.front() = 0.0;

    ladder.coarse_min.assign(k - 1, 2.0);
    ladder.coarse_max.assign(k - 1, 0.0);
    for (LabelSet J = 1; J <= all; ++J) {
        const int s = set_size(J);
        if (s < 2) continue;
        ladder.coarse_min[s - 2] = std::min(ladder.coarse_min[s - 2], value_of[J]);
        ladder.coarse_max[s - 2] = std::max(ladder.coarse_max[s - 2], value_of[J]);
    }
    return ladder;
}

int bucket_of(const ThresholdLadder& ladder, double z) {
    if (z < 0.0) throw InputError("bucket_of: z must be nonnegative");
    int n = 1;
    for (int i = 1; i < ladder.tau(); ++i)
        if (ladder.levels[i] <= z + 1e-12) n = i + 1;
    return n;
}

double margin(const ThresholdLadder& ladder, double z) {
    if (z < 0.0) throw InputError("margin: z must be nonnegative");
    for (double v : ladder.levels)
        if (v > z + 1e-12) return v - z;
    return 0.0;
}

double margin(const CostMatrix& w, double z) {
    return margin(threshold_ladder(w), z);
}

} // namespace costboost
