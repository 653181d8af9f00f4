#include <cmath>

#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "train_util.hpp"

namespace dwmc {

namespace {

struct Forward {
    std::vector<double> h;  // hidden activations
    std::vector<double> y;  // output activations
};

Forward forward(const MlpModel& m, const std::vector<double>& x) {
    Forward f;
    f.h.resize(m.hidden);
    for (int i = 0; i < m.hidden; ++i) {
        double z = m.w1[i][m.dim];
        for (int j = 0; j < m.dim; ++j) z += m.w1[i][j] * x[j];
        f.h[i] = 1.0 / (1.0 + std::exp(-z));
    }
    f.y.resize(m.class_count);
    for (int k = 0; k < m.class_count; ++k) {
        double z = m.w2[k][m.hidden];
        for (int i = 0; i < m.hidden; ++i) z += m.w2[k][i] * f.h[i];
        f.y[k] = 1.0 / (1.0 + std::exp(-z));
    }
    return f;
}

}  // namespace

double mlp_loss(const MlpModel& model, const TrainingSet& samples) {
    double sum = 0.0;
    for (std::size_t n = 0; n < samples.x.size(); ++n) {
        const Forward f = forward(model, samples.x[n]);
        for (int k = 0; k < model.class_count; ++k) {
            const double t = samples.y[n] == k ? 1.0 : 0.0;
            sum += (f.y[k] - t) * (f.y[k] - t);
        }
    }
    return sum / (static_cast<double>(samples.x.size()) * model.class_count);
}

std::vector<double> mlp_gradient(const MlpModel& model, const TrainingSet& samples) {
    const std::size_t n1 = static_cast<std::size_t>(model.hidden) * (model.dim + 1);
    const std::size_t n2 = static_cast<std::size_t>(model.class_count) * (model.hidden + 1);
    std::vector<double> grad(n1 + n2, 0.0);
    const double scale = 2.0 / (static_cast<double>(samples.x.size()) * model.class_count);

    for (std::size_t n = 0; n < samples.x.size(); ++n) {
        const std::vector<double>& x = samples.x[n];
        const Forward f = forward(model, x);
        std::vector<double> dout(model.class_count);
        for (int k = 0; k < model.class_count; ++k) {
            const double t = samples.y[n] == k ? 1.0 : 0.0;
            dout[k] = scale * (f.y[k] - t) * f.y[k] * (1.0 - f.y[k]);
        }
        std::vector<double> dhid(model.hidden, 0.0);
        for (int i = 0; i < model.hidden; ++i) {
            double acc = 0.0;
            for (int k = 0; k < model.class_count; ++k) acc += dout[k] * model.w2[k][i];
            dhid[i] = acc * f.h[i] * (1.0 - f.h[i]);
        }
        for (int i = 0; i < model.hidden; ++i) {
            const std::size_t base = static_cast<std::size_t>(i) * (model.dim + 1);
            for (int j = 0; j < model.dim; ++j) grad[base + j] += dhid[i] * x[j];
            grad[base + model.dim] += dhid[i];
        }
        for (int k = 0; k < model.class_count; ++k) {
            const std::size_t base = n1 + static_cast<std::size_t>(k) * (model.hidden + 1);
            for (int i = 0; i < model.hidden; ++i) grad[base + i] += dout[k] * f.h[i];
            grad[base + model.hidden] += dout[k];
        }
    }
    return grad;
}

MlpModel train_mlp(const TrainingSet& ts, int hidden, double eta0, int max_iters, double target_error,
                   std::uint64_t seed) {
    ts.validate();
    if (hidden < 1) throw ConfigError("mlp: needs at least one hidden unit");
    if (max_iters < 1) throw ConfigError("mlp: needs at least one epoch");

    Rng rng(seed);
    std::uniform_real_distribution<double> init(-0.5, 0.5);
    MlpModel model;
    model.dim = ts.dim;
    model.hidden = hidden;
    model.class_count = ts.class_count;
    model.w1.assign(hidden, std::vector<double>(ts.dim + 1));
    model.w2.assign(ts.class_count, std::vector<double>(hidden + 1));
    for (auto& row : model.w1)
        for (double& w : row) w = init(rng);
    for (auto& row : model.w2)
        for (double& w : row) w = init(rng);

    for (int e = 0; e < max_iters; ++e) {
        const double eta = eta_linear(eta0, e, max_iters);
        for (std::size_t idx : epoch_order(rng, ts.x.size())) {
            const std::vector<double>& x = ts.x[idx];
            const Forward f = forward(model, x);
            std::vector<double> dout(model.class_count);
            for (int k = 0; k < model.class_count; ++k) {
                const double t = ts.y[idx] == k ? 1.0 : 0.0;
                dout[k] = (f.y[k] - t) * f.y[k] * (1.0 - f.y[k]);
            }
            std::vector<double> dhid(hidden);
            for (int i = 0; i < hidden; ++i) {
                double acc = 0.0;
                for (int k = 0; k < model.class_count; ++k) acc += dout[k] * model.w2[k][i];
                dhid[i] = acc * f.h[i] * (1.0 - f.h[i]);
            }
            for (int k = 0; k < model.class_count; ++k) {
                for (int i = 0; i < hidden; ++i) model.w2[k][i] -= eta * dout[k] * f.h[i];
                model.w2[k][hidden] -= eta * dout[k];
            }
            for (int i = 0; i < hidden; ++i) {
                for (int j = 0; j < ts.dim; ++j) model.w1[i][j] -= eta * dhid[i] * x[j];
                model.w1[i][ts.dim] -= eta * dhid[i];
            }
        }
        const double mse = mlp_loss(model, ts);
        if (!std::isfinite(mse)) throw ConvergenceError("mlp: training diverged");
        if (mse <= target_error) break;
    }
    return model;
}

}  // namespace dwmc
