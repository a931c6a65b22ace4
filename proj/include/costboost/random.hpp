#ifndef COSTBOOST_RANDOM_HPP
#define COSTBOOST_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace costboost {

using Rng = std::mt19937_64;

// SplitMix64 step; used to derive independent stream seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(root ^ splitmix64(stream + 1));
}

// Uniform double in [0, 1) with exactly 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(Rng& rng, int n) {
    return static_cast<int>(uniform01(rng) * n) % n;
}

// Inverse-CDF draw over `cdf` (nondecreasing, back() ~ 1). Ties on the CDF
// resolve to the smallest index whose cumulative mass strictly exceeds u.
inline int sample_cdf(const std::vector<double>& cdf, double u) {
    int lo = 0;
    int hi = static_cast<int>(cdf.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (cdf[mid] > u) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

} // namespace costboost

#endif
