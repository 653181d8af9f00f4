#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "train_util.hpp"

namespace dwmc {

FcmModel train_fcm(const std::vector<std::vector<double>>& data, int m, int iters, double eta0,
                   double fuzzifier, std::uint64_t seed) {
    check_dims(data);
    if (m < 2) throw ConfigError("fcm: needs at least two clusters");
    if (iters < 1) throw ConfigError("fcm: needs at least one epoch");
    if (!(fuzzifier > 1.0)) throw ConfigError("fcm: fuzzifier must exceed 1");

    Rng rng(seed);
    FcmModel model{static_cast<int>(data[0].size()), fuzzifier, prototypes_from_data(data, m, rng)};

    for (int e = 0; e < iters; ++e) {
        const double eta = eta_linear(eta0, e, iters);
        for (std::size_t idx : epoch_order(rng, data.size())) {
            const std::vector<double>& x = data[idx];
            const std::vector<double> u = model.memberships(x);
            for (int k = 0; k < m; ++k) {
                const double s = eta * u[k] * u[k];
                for (int j = 0; j < model.dim; ++j) model.centers[k][j] += s * (x[j] - model.centers[k][j]);
            }
        }
    }
    return model;
}

}  // namespace dwmc
