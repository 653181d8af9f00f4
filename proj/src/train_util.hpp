#pragma once

#include <vector>

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

inline int nearest_index(const std::vector<std::vector<double>>& prototypes, const std::vector<double>& x) {
    int best = 0;
    double best_d = squared_distance(prototypes[0], x);
    for (std::size_t i = 1; i < prototypes.size(); ++i) {
        const double d = squared_distance(prototypes[i], x);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

// Proportional decay to keep eta0 = 0 a strict no-op.
inline double eta_linear(double eta0, int epoch, int epochs) {
    return eta0 * (1.0 - static_cast<double>(epoch) / static_cast<double>(epochs));
}

inline std::vector<std::size_t> epoch_order(Rng& rng, std::size_t n) {
    return sample_without_replacement(rng, n, n);
}

inline void check_dims(const std::vector<std::vector<double>>& data) {
    if (data.empty()) throw ConfigError("trainer: empty data");
    for (const auto& x : data)
        if (x.size() != data[0].size()) throw ConfigError("trainer: inconsistent sample dimensions");
}

// Prototypes from distinct data samples, uniform in [0,1]^dim when the
// data runs out.
inline std::vector<std::vector<double>> prototypes_from_data(const std::vector<std::vector<double>>& data,
                                                             int count, Rng& rng) {
    std::vector<std::vector<double>> protos;
    protos.reserve(count);
    for (std::size_t idx : sample_without_replacement(rng, data.size(), count)) protos.push_back(data[idx]);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    while (static_cast<int>(protos.size()) < count) {
        std::vector<double> w(data[0].size());
        for (double& v : w) v = uniform(rng);
        protos.push_back(std::move(w));
    }
    return protos;
}

}  // namespace dwmc
