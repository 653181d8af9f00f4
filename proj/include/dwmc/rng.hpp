#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dwmc {

using Rng = std::mt19937_64;

// First k entries of a partial Fisher-Yates shuffle of 0..n-1.
// Deterministic for a given rng state; used by every trainer that
// seeds prototypes from data samples.
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    return idx;
}

inline double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace dwmc
