#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "train_util.hpp"

namespace dwmc {

LvqModel train_lvq(const TrainingSet& ts, int iters, double eta0, std::uint64_t seed) {
    ts.validate();
    if (iters < 1) throw ConfigError("lvq: needs at least one epoch");

    // One codebook per class, seeded at the class mean.
    std::vector<std::vector<double>> codebooks(ts.class_count, std::vector<double>(ts.dim, 0.0));
    std::vector<std::size_t> counts(ts.class_count, 0);
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        for (int j = 0; j < ts.dim; ++j) codebooks[ts.y[i]][j] += ts.x[i][j];
        ++counts[ts.y[i]];
    }
    for (int c = 0; c < ts.class_count; ++c)
        for (int j = 0; j < ts.dim; ++j) codebooks[c][j] /= static_cast<double>(counts[c]);

    Rng rng(seed);
    for (int e = 0; e < iters; ++e) {
        const double eta = eta_linear(eta0, e, iters);
        for (std::size_t idx : epoch_order(rng, ts.x.size())) {
            const std::vector<double>& x = ts.x[idx];
            const int k = nearest_index(codebooks, x);
            const double sign = k == ts.y[idx] ? 1.0 : -1.0;  // LVQ1
            for (int j = 0; j < ts.dim; ++j)
                codebooks[k][j] = clamp01(codebooks[k][j] + sign * eta * (x[j] - codebooks[k][j]));
        }
    }
    return LvqModel{ts.dim, ts.class_count, std::move(codebooks)};
}

}  // namespace dwmc
