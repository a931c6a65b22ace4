#ifndef COSTBOOST_GRIDS_HPP
#define COSTBOOST_GRIDS_HPP

#include <vector>

namespace costboost {

// Enumerates all probability vectors on the dim-simplex whose entries are
// multiples of 1/resolution, in lexicographic order of the count vector.
// fn receives a reused buffer; callers must copy if they keep it.
template <typename Fn>
void enumerate_simplex_grid(int dim, int resolution, Fn&& fn) {
    std::vector<int> counts(dim, 0);
    std::vector<double> probs(dim, 0.0);
    const double inv = 1.0 / resolution;
    // Walk compositions of `resolution` into `dim` parts.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dim - 1) {
            counts[pos] = remaining;
            for (int i = 0; i < dim; ++i) probs[i] = counts[i] * inv;
            fn(const_cast<const std::vector<double>&>(probs));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    rec(rec, 0, resolution);
}

// Number of grid points the enumeration above visits: C(resolution+dim-1, dim-1).
long long simplex_grid_size(int dim, int resolution);

} // namespace costboost

#endif
