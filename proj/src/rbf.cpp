#include <cmath>

#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "train_util.hpp"

namespace dwmc {

namespace {
constexpr double kWidthFloor = 1e-3;
}

RbfModel train_rbf(const TrainingSet& ts, int centers, int kmeans_iters, double eta0, int out_iters,
                   std::uint64_t seed) {
    ts.validate();
    if (centers < 1) throw ConfigError("rbf: needs at least one center");
    if (centers > static_cast<int>(ts.x.size())) throw ConfigError("rbf: more centers than samples");
    if (kmeans_iters < 1 || out_iters < 1) throw ConfigError("rbf: needs at least one epoch per layer");

    Rng rng(seed);
    RbfModel model;
    model.dim = ts.dim;
    model.class_count = ts.class_count;
    model.centers = prototypes_from_data(ts.x, centers, rng);

    // Layer 1: online k-means.
    for (int e = 0; e < kmeans_iters; ++e) {
        const double eta = eta_linear(eta0, e, kmeans_iters);
        for (std::size_t idx : epoch_order(rng, ts.x.size())) {
            const std::vector<double>& x = ts.x[idx];
            const int k = nearest_index(model.centers, x);
            for (int j = 0; j < ts.dim; ++j) model.centers[k][j] += eta * (x[j] - model.centers[k][j]);
        }
    }

    // Widths: mean member distance, reseeding empty clusters from the data.
    std::vector<int> assign(ts.x.size());
    std::uniform_int_distribution<std::size_t> pick(0, ts.x.size() - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<std::size_t> members(centers, 0);
        for (std::size_t i = 0; i < ts.x.size(); ++i) {
            assign[i] = nearest_index(model.centers, ts.x[i]);
            ++members[assign[i]];
        }
        bool reseeded = false;
        for (int c = 0; c < centers; ++c)
            if (members[c] == 0) {
                model.centers[c] = ts.x[pick(rng)];
                reseeded = true;
            }
        if (!reseeded) break;
    }
    model.widths.assign(centers, 0.0);
    std::vector<std::size_t> members(centers, 0);
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        const int c = nearest_index(model.centers, ts.x[i]);
        model.widths[c] += std::sqrt(squared_distance(model.centers[c], ts.x[i]));
        ++members[c];
    }
    for (int c = 0; c < centers; ++c) {
        if (members[c] > 0) model.widths[c] /= static_cast<double>(members[c]);
        if (model.widths[c] < kWidthFloor) model.widths[c] = kWidthFloor;
    }

    // Layer 2: linear delta rule on one-hot targets.
    model.w.assign(ts.class_count, std::vector<double>(centers + 1, 0.0));
    for (int e = 0; e < out_iters; ++e) {
        const double eta = eta_linear(eta0, e, out_iters);
        for (std::size_t idx : epoch_order(rng, ts.x.size())) {
            const std::vector<double> phi = model.basis(ts.x[idx]);
            for (int k = 0; k < ts.class_count; ++k) {
                double y = model.w[k][centers];
                for (int c = 0; c < centers; ++c) y += model.w[k][c] * phi[c];
                const double t = ts.y[idx] == k ? 1.0 : 0.0;
                const double err = t - y;
                for (int c = 0; c < centers; ++c) model.w[k][c] += eta * err * phi[c];
                model.w[k][centers] += eta * err;
            }
        }
    }
    return model;
}

}  // namespace dwmc
