#ifndef COSTBOOST_GAMES_HPP
#define COSTBOOST_GAMES_HPP

#include <cstdint>
#include <vector>

namespace costboost {

// Labels are 0-based internally; JSON and CLI surfaces use 1-based labels.
// A label subset J over Y = {0, ..., k-1} is a bitmask (k <= 12 everywhere
// subsets get enumerated, so 32 bits are plenty).
using LabelSet = std::uint32_t;

inline LabelSet full_set(int k) { return (LabelSet{1} << k) - 1; }
inline bool contains(LabelSet J, int label) { return (J >> label) & 1u; }
inline int set_size(LabelSet J) { return __builtin_popcount(J); }
std::vector<int> labels_of(LabelSet J);
LabelSet set_of(const std::vector<int>& labels);

// Probability vector over a finite index set. Entries >= 0, sum within 1e-12 of 1.
struct SimplexDist {
    std::vector<double> probs;

    SimplexDist() = default;
    explicit SimplexDist(std::vector<double> p) : probs(std::move(p)) {}

    static SimplexDist uniform(int n);
    static SimplexDist point_mass(int n, int i);

    int size() const { return static_cast<int>(probs.size()); }
    double operator[](int i) const { return probs[i]; }
    void validate(double tol = 1e-12) const;
    void normalize();
};

// k x k loss matrix w with zero diagonal and entries in [0, 1];
// entry (i, j) is the cost of predicting i when the truth is j.
struct CostMatrix {
    int k = 0;
    std::vector<double> entries;  // row-major

    CostMatrix() = default;
    CostMatrix(int k_, std::vector<double> e) : k(k_), entries(std::move(e)) {}

    static CostMatrix zeros(int k);
    static CostMatrix zero_one(int k);
    // Binary convention: index 0 is label -1, index 1 is label +1, so
    // w(+1,-1) = w_plus sits at (1,0) and w(-1,+1) = w_minus at (0,1).
    static CostMatrix binary(double w_plus, double w_minus);

    double operator()(int i, int j) const { return entries[i * k + j]; }
    double& at(int i, int j) { return entries[i * k + j]; }
    double max_entry() const;
    void validate() const;
};

// w(p, q) = sum_{i,j} p_i q_j w(i, j)
double expected_cost(const CostMatrix& w, const SimplexDist& p, const SimplexDist& q);
// w(p, delta_j)
double expected_cost_vs_label(const CostMatrix& w, const SimplexDist& p, int j);

struct GameValue {
    double value = 0.0;
    SimplexDist minimax_strategy;  // achieving p over Y
    LabelSet restriction = 0;      // the subset J
};

// V_J(w) = min_{p in simplex(Y)} max_{q in simplex(J)} w(p, q), solved as the LP
//   minimize t  s.t.  sum_i p_i w(i, j) <= t for all j in J,  p in simplex.
// J = Y gives V(w). Empty J is an input error (the V_empty = 0 convention is
// the ladder's job, not this one's).
GameValue game_value(const CostMatrix& w, LabelSet J);

// Sorted distinct restricted game values with their witness subsets, plus the
// size-s coarsenings min/max over |J| = s.
struct ThresholdLadder {
    int k = 0;
    std::vector<double> levels;                    // v_1 = 0 < ... < v_tau
    std::vector<std::vector<LabelSet>> witnesses;  // per level, ascending mask
    std::vector<double> coarse_min;                // coarse_min[s-2] = v_s lower, s = 2..k
    std::vector<double> coarse_max;                // coarse_max[s-2] = v_s upper

    int tau() const { return static_cast<int>(levels.size()); }
    double top() const { return levels.back(); }
    double v_lower(int s) const { return coarse_min.at(s - 2); }
    double v_upper(int s) const { return coarse_max.at(s - 2); }
};

inline constexpr double kLadderDedupTol = 1e-9;
inline constexpr int kMaxLadderLabels = 12;

ThresholdLadder threshold_ladder(const CostMatrix& w);

// Largest n (1-based) with v_n <= z.
int bucket_of(const ThresholdLadder& ladder, double z);

// Distance from z up to the next ladder level strictly above z; 0 if none.
// For k = 2 this coincides with max{0, V(w) - z}.
double margin(const ThresholdLadder& ladder, double z);
double margin(const CostMatrix& w, double z);

} // namespace costboost

#endif
