#ifndef COSTBOOST_ATTAINABILITY_HPP
#define COSTBOOST_ATTAINABILITY_HPP

#include <optional>
#include <vector>

#include "costboost/games.hpp"

namespace costboost {

// A vector of r cost matrices over the same label space.
struct MultiCost {
    std::vector<CostMatrix> costs;

    MultiCost() = default;
    explicit MultiCost(std::vector<CostMatrix> c) : costs(std::move(c)) {}
    explicit MultiCost(CostMatrix c) { costs.push_back(std::move(c)); }

    // The binary false-negative / false-positive pair (w_-, w_+):
    // w_1 counts predictions of -1 on true +1, w_2 the reverse.
    static MultiCost population_driven();

    int r() const { return static_cast<int>(costs.size()); }
    int k() const { return costs.empty() ? 0 : costs.front().k; }
    void validate() const;
};

struct GuaranteeVector {
    std::vector<double> z;

    GuaranteeVector() = default;
    explicit GuaranteeVector(std::vector<double> v) : z(std::move(v)) {}

    int r() const { return static_cast<int>(z.size()); }
    double operator[](int i) const { return z[i]; }
    void validate() const;
};

// w_alpha = sum_i alpha_i w_i, entrywise.
CostMatrix scalarize(const MultiCost& w, const SimplexDist& alpha);
double scalarize(const GuaranteeVector& z, const SimplexDist& alpha);

enum class DecisionMode { Grid, DualitySweep };

struct AttainabilityConfig {
    DecisionMode mode = DecisionMode::Grid;
    int q_resolution_small = 200;  // |J| <= 3
    int q_resolution_large = 50;   // 4 <= |J| <= 5
    double slack_tol = 1e-6;
    bool cross_check = false;      // also run the alpha sweep and compare
    int certificate_samples = 32;  // grid witnesses kept on attainable verdicts

    int q_resolution(int subset_size) const {
        return subset_size <= 3 ? q_resolution_small : q_resolution_large;
    }
    // Delta_r sweep resolution, kept coarse for large r to bound grid size.
    int alpha_resolution(int r) const {
        if (r <= 3) return 100;
        if (r == 4) return 20;
        if (r <= 6) return 8;
        return 5;
    }
};

struct GridWitness {
    std::vector<double> q;      // environment marginal on labels_of(J)
    std::vector<double> p;      // responding prediction distribution over Y
    std::vector<double> costs;  // w_i(p, q) per objective
};

struct AttainabilityVerdict {
    bool attainable = false;
    LabelSet subset = 0;
    // Populated exactly when attainable = false: an alpha with <alpha,z> < V_J(w_alpha).
    std::optional<SimplexDist> separating_alpha;
    double separation = 0.0;  // V_J(w_alpha) - <alpha,z> at the witness
    // Populated exactly when attainable = true: a q -> p certificate sampled
    // over the decision grid, every objective cost within z_i + slack_tol.
    std::vector<GridWitness> certificate;
    double worst_violation = 0.0;  // max over grid of min_p max_i (w_i(p,q) - z_i)
    // Present when cross_check was requested: the alpha-sweep decision.
    std::optional<bool> duality_decision;
};

// Decides "for all q in simplex(J) there is p with w_i(p,q) <= z_i for all i"
// over a finite q grid (default) or via the scalarization duality sweep.
AttainabilityVerdict is_dice_attainable(const MultiCost& w, const GuaranteeVector& z,
                                        LabelSet J, const AttainabilityConfig& cfg = {});

// The J = Y special case.
AttainabilityVerdict is_coin_attainable(const MultiCost& w, const GuaranteeVector& z,
                                        const AttainabilityConfig& cfg = {});

struct AvoidedSets {
    std::vector<LabelSet> all;      // nonempty J with z not J-dice-attainable
    std::vector<LabelSet> minimal;  // minimal elements under inclusion
};

// Enumerates every nonempty J (grid decision for |J| <= 5, duality sweep above).
AvoidedSets avoided_sets(const MultiCost& w, const GuaranteeVector& z,
                         const AttainabilityConfig& cfg = {});

// z precedes z' iff every J avoided by z' is avoided by z.
bool precedes(const MultiCost& w, const GuaranteeVector& z, const GuaranteeVector& z_prime,
              const AttainabilityConfig& cfg = {});

struct BoundaryPoint {
    double z1 = 0.0;
    double z2 = 0.0;     // smallest attainable second coordinate (closed region)
    bool found = false;  // false when no z2 in [0,1] is attainable
};

// For r = 2: sweeps z1 = i/resolution (i = 0..resolution-1) and bisects the
// coin-attainability transition in z2 to within 1e-4.
std::vector<BoundaryPoint> trace_boundary(const MultiCost& w, int resolution,
                                          const AttainabilityConfig& cfg = {});

// For r = 2: max |z2 transition by grid-LP - z2 transition by the halfspace
// envelope min_alpha(<alpha,z> - V(w_alpha))| over the z1 sweep.
double envelope_check(const MultiCost& w, int alpha_grid, const AttainabilityConfig& cfg = {});

} // namespace costboost

#endif
