#include <algorithm>

#include "dwmc/classifiers.hpp"
#include "dwmc/errors.hpp"
#include "train_util.hpp"

namespace dwmc {

SomModel train_som(const std::vector<std::vector<double>>& data, int m, int iters, double eta0,
                   std::uint64_t seed) {
    check_dims(data);
    if (m < 1) throw ConfigError("som: map size must be at least 1");
    if (iters < 1) throw ConfigError("som: needs at least one epoch");

    Rng rng(seed);
    std::vector<std::vector<double>> protos = prototypes_from_data(data, m, rng);
    const int dim = static_cast<int>(data[0].size());

    for (int e = 0; e < iters; ++e) {
        const double eta = eta_linear(eta0, e, iters);
        const int radius = e < iters / 2 ? 1 : 0;  // chain neighborhood, then winner only
        for (std::size_t idx : epoch_order(rng, data.size())) {
            const std::vector<double>& x = data[idx];
            const int k = nearest_index(protos, x);
            const int lo = std::max(0, k - radius);
            const int hi = std::min(m - 1, k + radius);
            for (int node = lo; node <= hi; ++node)
                for (int j = 0; j < dim; ++j) protos[node][j] += eta * (x[j] - protos[node][j]);
        }
    }
    return SomModel{dim, std::move(protos)};
}

}  // namespace dwmc
