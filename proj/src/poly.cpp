#include <algorithm>
#include <cmath>

#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "dwmc/morphology.hpp"
#include "train_util.hpp"

namespace dwmc {

namespace {

// Exponent tuples of one total degree: pure powers first, then the mixed
// tuples in descending lexicographic order.
void append_degree_tuples(int dim, int degree, std::vector<std::vector<int>>& out) {
    if (degree == 0) {
        out.emplace_back(dim, 0);
        return;
    }
    for (int i = 0; i < dim; ++i) {
        std::vector<int> pure(dim, 0);
        pure[i] = degree;
        out.push_back(std::move(pure));
    }
    if (degree == 1) return;  // degree-1 tuples are all pure

    std::vector<std::vector<int>> mixed;
    std::vector<int> current(dim, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == dim - 1) {
            current[pos] = remaining;
            mixed.push_back(current);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            current[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    for (auto& t : mixed) {
        const bool pure = std::count(t.begin(), t.end(), 0) == dim - 1;
        if (!pure) out.push_back(std::move(t));
    }
}

std::vector<std::vector<int>> monomials(int dim, int degree) {
    std::vector<std::vector<int>> tuples;
    for (int d = 0; d <= degree; ++d) append_degree_tuples(dim, d, tuples);
    return tuples;
}

}  // namespace

std::size_t polynomial_term_count(int dim, int degree) {
    // C(dim + degree, degree)
    std::size_t num = 1, den = 1;
    for (int i = 1; i <= degree; ++i) {
        num *= static_cast<std::size_t>(dim + i);
        den *= static_cast<std::size_t>(i);
    }
    return num / den;
}

std::vector<double> expand_polynomial(const std::vector<double>& x, int degree) {
    if (degree < 0) throw ConfigError("polynomial: degree must be nonnegative");
    const int dim = static_cast<int>(x.size());
    std::vector<double> terms;
    for (const std::vector<int>& t : monomials(dim, degree)) {
        double v = 1.0;
        for (int j = 0; j < dim; ++j)
            for (int e = 0; e < t[j]; ++e) v *= x[j];
        terms.push_back(v);
    }
    return terms;
}

PolyModel train_polynomial(const TrainingSet& ts, int degree, double eta0, int max_iters,
                           double target_error, std::uint64_t seed) {
    ts.validate();
    if (degree < 1) throw ConfigError("polynomial: degree must be at least 1");
    if (max_iters < 1) throw ConfigError("polynomial: needs at least one epoch");

    std::vector<std::vector<double>> features;
    features.reserve(ts.x.size());
    for (const auto& x : ts.x) features.push_back(expand_polynomial(x, degree));
    const std::size_t n_terms = features[0].size();

    PolyModel model;
    model.dim = ts.dim;
    model.degree = degree;
    model.class_count = ts.class_count;
    model.w.assign(ts.class_count, std::vector<double>(n_terms, 0.0));

    Rng rng(seed);
    for (int e = 0; e < max_iters; ++e) {
        const double eta = eta_linear(eta0, e, max_iters);
        for (std::size_t idx : epoch_order(rng, ts.x.size())) {
            const std::vector<double>& phi = features[idx];
            for (int k = 0; k < ts.class_count; ++k) {
                double y = 0.0;
                for (std::size_t t = 0; t < n_terms; ++t) y += model.w[k][t] * phi[t];
                const double err = (ts.y[idx] == k ? 1.0 : 0.0) - y;
                for (std::size_t t = 0; t < n_terms; ++t) model.w[k][t] += eta * err * phi[t];
            }
        }
        double mse = 0.0;
        for (std::size_t i = 0; i < ts.x.size(); ++i) {
            const std::vector<double> y = model.discriminants(ts.x[i]);
            for (int k = 0; k < ts.class_count; ++k) {
                const double t = ts.y[i] == k ? 1.0 : 0.0;
                mse += (y[k] - t) * (y[k] - t);
            }
        }
        mse /= static_cast<double>(ts.x.size()) * ts.class_count;
        if (!std::isfinite(mse)) throw ConvergenceError("polynomial: training diverged");
        if (mse <= target_error) break;
    }
    return model;
}

int select_polynomial_degree(const TrainingSet& ts, const MultispectralImage& image, int max_degree,
                             double threshold, double eta0, int max_iters, double target_error,
                             std::uint64_t seed) {
    if (max_degree < 2) throw ConfigError("polynomial: max_degree must be at least 2");
    if (ts.class_count < 2) throw ConfigError("polynomial: degree selection needs at least two classes");

    auto scaled_labels = [&](const LabelMap& map) {
        std::vector<double> v(map.labels().size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = static_cast<double>(map.labels()[i]) / (ts.class_count - 1);
        return Band(map.grid(), std::move(v));
    };

    LabelMap prev = classify_image(train_polynomial(ts, 2, eta0, max_iters, target_error, seed), image);
    for (int d = 2; d < max_degree; ++d) {
        LabelMap next =
            classify_image(train_polynomial(ts, d + 1, eta0, max_iters, target_error, seed), image);
        if (wang_fidelity(scaled_labels(prev), scaled_labels(next)) >= threshold) return d;
        prev = std::move(next);
    }
    return max_degree;
}

}  // namespace dwmc
