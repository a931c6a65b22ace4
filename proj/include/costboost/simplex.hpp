#ifndef COSTBOOST_SIMPLEX_HPP
#define COSTBOOST_SIMPLEX_HPP

#include <limits>
#include <string>
#include <vector>

namespace costboost {

// Dense two-phase tableau simplex with Bland's anti-cycling rule.
// All minimax/feasibility problems in this project are tiny (n, m on the
// order of 2^k + k), so the priority is determinism and auditability.

enum class ConstraintSense { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline constexpr double kLpFeasTol = 1e-9;
inline constexpr double kLpObjTol = 1e-9;
inline constexpr double kLpPivotTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
    bool maximize = false;
    std::vector<double> objective;                       // length n
    std::vector<std::vector<double>> constraint_matrix;  // m rows of length n
    std::vector<double> constraint_rhs;                  // length m
    std::vector<ConstraintSense> constraint_sense;       // length m
    std::vector<double> lower_bounds;                    // length n, -inf allowed
    std::vector<double> upper_bounds;                    // length n, +inf allowed

    // n variables, all with bounds [0, +inf) until changed.
    static LinearProgram with_vars(int n, bool maximize = false);

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_constraints() const { return static_cast<int>(constraint_rhs.size()); }

    void add_constraint(std::vector<double> row, ConstraintSense sense, double rhs);
    void set_bounds(int var, double lo, double up);

    // Throws InputError on inconsistent dimensions or non-finite data.
    void validate() const;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double optimal_value = 0.0;
    std::vector<double> primal;  // length n when Optimal

    bool optimal() const { return status == LpStatus::Optimal; }
};

LpSolution solve(const LinearProgram& lp);

// Largest violation of constraints and bounds at `x` (0 when feasible).
double feasibility_violation(const LinearProgram& lp, const std::vector<double>& x);

std::string to_string(LpStatus status);

} // namespace costboost

#endif
