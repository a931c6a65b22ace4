#ifndef COSTBOOST_TEST_UTIL_HPP
#define COSTBOOST_TEST_UTIL_HPP

#include <vector>

#include "costboost/games.hpp"
#include "costboost/random.hpp"

namespace costboost::test {

// Independent of expected_cost's loop structure: plain double sum.
inline double double_sum_cost(const CostMatrix& w, const std::vector<double>& p,
                              const std::vector<double>& q) {
    double total = 0.0;
    for (int i = 0; i < w.k; ++i)
        for (int j = 0; j < w.k; ++j) total += p[i] * q[j] * w(i, j);
    return total;
}

inline SimplexDist random_dist(int n, Rng& rng) {
    std::vector<double> p(n);
    double total = 0.0;
    for (double& v : p) {
        v = -std::log(1.0 - uniform01(rng));
        total += v;
    }
    for (double& v : p) v /= total;
    return SimplexDist(p);
}

inline double binary_closed_form(double w_plus, double w_minus) {
    if (w_plus <= 0.0 || w_minus <= 0.0) return 0.0;
    return w_plus * w_minus / (w_plus + w_minus);
}

} // namespace costboost::test

#endif
