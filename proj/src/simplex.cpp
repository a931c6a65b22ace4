#include "costboost/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "costboost/errors.hpp"

namespace costboost {

LinearProgram LinearProgram::with_vars(int n, bool maximize) {
    LinearProgram lp;
    lp.maximize = maximize;
    lp.objective.assign(n, 0.0);
    lp.lower_bounds.assign(n, 0.0);
    lp.upper_bounds.assign(n, kInf);
    return lp;
}

void LinearProgram::add_constraint(std::vector<double> row, ConstraintSense sense, double rhs) {
    constraint_matrix.push_back(std::move(row));
    constraint_sense.push_back(sense);
    constraint_rhs.push_back(rhs);
}

void LinearProgram::set_bounds(int var, double lo, double up) {
    lower_bounds.at(var) = lo;
    upper_bounds.at(var) = up;
}

void LinearProgram::validate() const {
    const std::size_t n = objective.size();
    if (n == 0) throw InputError("LinearProgram: no variables");
    if (lower_bounds.size() != n || upper_bounds.size() != n)
        throw InputError("LinearProgram: bounds length != n");
    const std::size_t m = constraint_rhs.size();
    if (constraint_matrix.size() != m || constraint_sense.size() != m)
        throw InputError("LinearProgram: constraint arrays disagree on m");
    for (double c : objective)
        if (!std::isfinite(c)) throw InputError("LinearProgram: non-finite objective entry");
    for (std::size_t i = 0; i < m; ++i) {
        if (constraint_matrix[i].size() != n)
            throw InputError("LinearProgram: constraint row length != n");
        for (double a : constraint_matrix[i])
            if (!std::isfinite(a)) throw InputError("LinearProgram: non-finite matrix entry");
        if (!std::isfinite(constraint_rhs[i]))
            throw InputError("LinearProgram: non-finite rhs entry");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isnan(lower_bounds[j]) || std::isnan(upper_bounds[j]))
            throw InputError("LinearProgram: NaN bound");
        if (lower_bounds[j] == kInf || upper_bounds[j] == -kInf)
            throw InputError("LinearProgram: bound with wrong-signed infinity");
    }
}

namespace {

// Mapping from an original variable to columns of the standard-form problem
//   min c'y  s.t.  A'y = b', y >= 0.
struct VarMap {
    enum class Kind { ShiftLower, FlipUpper, FreeSplit } kind;
    int col = -1;       // primary column
    int col_neg = -1;   // second column for FreeSplit
    double offset = 0;  // lower bound (ShiftLower) or upper bound (FlipUpper)
};

struct Tableau {
    int rows = 0;
    int cols = 0;                 // structural + slack/artificial columns
    std::vector<double> a;        // rows x cols
    std::vector<double> rhs;      // rows
    std::vector<double> obj;      // cols (reduced-cost row)
    double obj_shift = 0.0;
    std::vector<int> basis;       // rows

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

void pivot(Tableau& t, int pr, int pc) {
    const double piv = t.at(pr, pc);
    if (std::fabs(piv) < kLpPivotTol)
        throw NumericError("simplex: pivot magnitude below 1e-12 at row " + std::to_string(pr) +
                           ", col " + std::to_string(pc));
    const double inv = 1.0 / piv;
    for (int c = 0; c < t.cols; ++c) t.at(pr, c) *= inv;
    t.rhs[pr] *= inv;
    t.at(pr, pc) = 1.0;
    for (int r = 0; r < t.rows; ++r) {
        if (r == pr) continue;
        const double f = t.at(r, pc);
        if (f == 0.0) continue;
        for (int c = 0; c < t.cols; ++c) t.at(r, c) -= f * t.at(pr, c);
        t.rhs[r] -= f * t.rhs[pr];
        t.at(r, pc) = 0.0;
    }
    {
        const double f = t.obj[pc];
        if (f != 0.0) {
            for (int c = 0; c < t.cols; ++c) t.obj[c] -= f * t.at(pr, c);
            t.obj_shift -= f * t.rhs[pr];
            t.obj[pc] = 0.0;
        }
    }
    t.basis[pr] = pc;
}

// Runs Bland's-rule iterations to optimality. Returns false on an unbounded ray.
bool run_simplex(Tableau& t, const std::vector<bool>& allowed) {
    const long iter_cap = 2000L * (t.rows + t.cols) + 10000L;
    for (long iter = 0; iter < iter_cap; ++iter) {
        int enter = -1;
        for (int c = 0; c < t.cols; ++c) {
            if (!allowed[c]) continue;
            if (t.obj[c] < -kLpObjTol) { enter = c; break; }  // Bland: smallest index
        }
        if (enter < 0) return true;

        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < t.rows; ++r) {
            const double arc = t.at(r, enter);
            if (arc > kLpPivotTol) {
                const double ratio = t.rhs[r] / arc;
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (std::fabs(ratio - best_ratio) <= 1e-15 && t.basis[r] < t.basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return false;
        pivot(t, leave, enter);
    }
    throw NumericError("simplex: iteration limit reached (possible tolerance cycling)");
}

} // namespace

LpSolution solve(const LinearProgram& lp) {
    lp.validate();
    const int n = lp.num_vars();
    const int m = lp.num_constraints();

    // Substitute variables so every standard-form column is nonnegative.
    std::vector<VarMap> vmap(n);
    int struct_cols = 0;
    int extra_rows = 0;
    for (int j = 0; j < n; ++j) {
        const double lo = lp.lower_bounds[j];
        const double up = lp.upper_bounds[j];
        if (lo > up) return LpSolution{LpStatus::Infeasible, 0.0, {}};
        if (lo > -kInf) {
            vmap[j] = {VarMap::Kind::ShiftLower, struct_cols++, -1, lo};
            if (up < kInf) ++extra_rows;  // y_j <= up - lo
        } else if (up < kInf) {
            vmap[j] = {VarMap::Kind::FlipUpper, struct_cols++, -1, up};
        } else {
            vmap[j] = {VarMap::Kind::FreeSplit, struct_cols, struct_cols + 1, 0.0};
            struct_cols += 2;
        }
    }

    struct Row {
        std::vector<double> a;
        double rhs;
        ConstraintSense sense;
    };
    std::vector<Row> rows;
    rows.reserve(m + extra_rows);
    auto transformed_row = [&](const std::vector<double>& orig, double rhs0, ConstraintSense s) {
        Row row{std::vector<double>(struct_cols, 0.0), rhs0, s};
        for (int j = 0; j < n; ++j) {
            const double a = orig[j];
            if (a == 0.0) continue;
            switch (vmap[j].kind) {
                case VarMap::Kind::ShiftLower:
                    row.a[vmap[j].col] += a;
                    row.rhs -= a * vmap[j].offset;
                    break;
                case VarMap::Kind::FlipUpper:
                    row.a[vmap[j].col] -= a;
                    row.rhs -= a * vmap[j].offset;
                    break;
                case VarMap::Kind::FreeSplit:
                    row.a[vmap[j].col] += a;
                    row.a[vmap[j].col_neg] -= a;
                    break;
            }
        }
        return row;
    };
    for (int i = 0; i < m; ++i)
        rows.push_back(transformed_row(lp.constraint_matrix[i], lp.constraint_rhs[i],
                                       lp.constraint_sense[i]));
    for (int j = 0; j < n; ++j) {
        if (vmap[j].kind == VarMap::Kind::ShiftLower && lp.upper_bounds[j] < kInf) {
            Row row{std::vector<double>(struct_cols, 0.0),
                    lp.upper_bounds[j] - lp.lower_bounds[j], ConstraintSense::LessEq};
            row.a[vmap[j].col] = 1.0;
            rows.push_back(row);
        }
    }
    for (Row& r : rows) {
        if (r.rhs < 0) {
            for (double& a : r.a) a = -a;
            r.rhs = -r.rhs;
            if (r.sense == ConstraintSense::LessEq) r.sense = ConstraintSense::GreaterEq;
            else if (r.sense == ConstraintSense::GreaterEq) r.sense = ConstraintSense::LessEq;
        }
    }

    const int mm = static_cast<int>(rows.size());
    int slack_cols = 0;
    int artificial_cols = 0;
    for (const Row& r : rows) {
        if (r.sense == ConstraintSense::LessEq) ++slack_cols;
        else if (r.sense == ConstraintSense::GreaterEq) { ++slack_cols; ++artificial_cols; }
        else ++artificial_cols;
    }

    Tableau t;
    t.rows = mm;
    t.cols = struct_cols + slack_cols + artificial_cols;
    t.a.assign(static_cast<std::size_t>(t.rows) * t.cols, 0.0);
    t.rhs.resize(mm);
    t.basis.assign(mm, -1);
    const int first_artificial = struct_cols + slack_cols;

    int next_slack = struct_cols;
    int next_art = first_artificial;
    for (int r = 0; r < mm; ++r) {
        for (int c = 0; c < struct_cols; ++c) t.at(r, c) = rows[r].a[c];
        t.rhs[r] = rows[r].rhs;
        switch (rows[r].sense) {
            case ConstraintSense::LessEq:
                t.at(r, next_slack) = 1.0;
                t.basis[r] = next_slack++;
                break;
            case ConstraintSense::GreaterEq:
                t.at(r, next_slack) = -1.0;
                ++next_slack;
                t.at(r, next_art) = 1.0;
                t.basis[r] = next_art++;
                break;
            case ConstraintSense::Equal:
                t.at(r, next_art) = 1.0;
                t.basis[r] = next_art++;
                break;
        }
    }

    std::vector<bool> allowed(t.cols, true);

    // Phase 1: minimize the sum of artificial variables.
    if (artificial_cols > 0) {
        t.obj.assign(t.cols, 0.0);
        t.obj_shift = 0.0;
        for (int c = first_artificial; c < t.cols; ++c) t.obj[c] = 1.0;
        for (int r = 0; r < mm; ++r) {
            if (t.basis[r] >= first_artificial) {
                for (int c = 0; c < t.cols; ++c) t.obj[c] -= t.at(r, c);
                t.obj_shift -= t.rhs[r];
            }
        }
        if (!run_simplex(t, allowed))
            throw NumericError("simplex: phase-1 objective unbounded");
        const double phase1 = -t.obj_shift;
        if (phase1 > kLpFeasTol) return LpSolution{LpStatus::Infeasible, 0.0, {}};

        // Pivot artificials out of the basis; a row that cannot pivot is a
        // redundant 0 = 0 row and is dropped, so no artificial survives into
        // phase 2 where later pivots could re-inflate it.
        for (int r = 0; r < t.rows; ++r) {
            if (t.basis[r] < first_artificial) continue;
            int pc = -1;
            for (int c = 0; c < first_artificial; ++c) {
                if (std::fabs(t.at(r, c)) > 1e-9) { pc = c; break; }
            }
            if (pc >= 0) pivot(t, r, pc);
        }
        int keep = 0;
        for (int r = 0; r < t.rows; ++r) {
            if (t.basis[r] >= first_artificial) continue;
            if (keep != r) {
                for (int c = 0; c < t.cols; ++c) t.at(keep, c) = t.at(r, c);
                t.rhs[keep] = t.rhs[r];
                t.basis[keep] = t.basis[r];
            }
            ++keep;
        }
        t.rows = keep;
        t.rhs.resize(keep);
        t.basis.resize(keep);
        for (int c = first_artificial; c < t.cols; ++c) allowed[c] = false;
    }

    // Phase 2: original objective over the standard-form columns.
    t.obj.assign(t.cols, 0.0);
    t.obj_shift = 0.0;
    const double sign = lp.maximize ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
        const double c = sign * lp.objective[j];
        if (c == 0.0) continue;
        switch (vmap[j].kind) {
            case VarMap::Kind::ShiftLower: t.obj[vmap[j].col] += c; break;
            case VarMap::Kind::FlipUpper: t.obj[vmap[j].col] -= c; break;
            case VarMap::Kind::FreeSplit:
                t.obj[vmap[j].col] += c;
                t.obj[vmap[j].col_neg] -= c;
                break;
        }
    }
    for (int r = 0; r < t.rows; ++r) {
        const int b = t.basis[r];
        if (b >= 0 && t.obj[b] != 0.0) {
            const double f = t.obj[b];
            for (int c = 0; c < t.cols; ++c) t.obj[c] -= f * t.at(r, c);
            t.obj_shift -= f * t.rhs[r];
            t.obj[b] = 0.0;
        }
    }
    if (!run_simplex(t, allowed)) return LpSolution{LpStatus::Unbounded, 0.0, {}};

    std::vector<double> y(t.cols, 0.0);
    for (int r = 0; r < t.rows; ++r)
        if (t.basis[r] >= 0) y[t.basis[r]] = t.rhs[r];

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.primal.resize(n);
    for (int j = 0; j < n; ++j) {
        switch (vmap[j].kind) {
            case VarMap::Kind::ShiftLower: sol.primal[j] = vmap[j].offset + y[vmap[j].col]; break;
            case VarMap::Kind::FlipUpper: sol.primal[j] = vmap[j].offset - y[vmap[j].col]; break;
            case VarMap::Kind::FreeSplit: sol.primal[j] = y[vmap[j].col] - y[vmap[j].col_neg]; break;
        }
    }
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += lp.objective[j] * sol.primal[j];
    sol.optimal_value = value;
    return sol;
}

double feasibility_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (int i = 0; i < lp.num_constraints(); ++i) {
        double lhs = 0.0;
        for (int j = 0; j < lp.num_vars(); ++j) lhs += lp.constraint_matrix[i][j] * x[j];
        const double rhs = lp.constraint_rhs[i];
        switch (lp.constraint_sense[i]) {
            case ConstraintSense::LessEq: worst = std::max(worst, lhs - rhs); break;
            case ConstraintSense::GreaterEq: worst = std::max(worst, rhs - lhs); break;
            case ConstraintSense::Equal: worst = std::max(worst, std::fabs(lhs - rhs)); break;
        }
    }
    for (int j = 0; j < lp.num_vars(); ++j) {
        worst = std::max(worst, lp.lower_bounds[j] - x[j]);
        worst = std::max(worst, x[j] - lp.upper_bounds[j]);
    }
    return worst;
}

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

} // namespace costboost
