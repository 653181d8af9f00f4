#include "dwmc/metrics.hpp"

#include <algorithm>

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t n = 0;
    for (const auto& row : t)
        for (std::uint64_t v : row) n += v;
    return n;
}

std::uint64_t ConfusionMatrix::trace() const {
    std::uint64_t n = 0;
    for (int i = 0; i < m; ++i) n += t[i][i];
    return n;
}

ConfusionMatrix build_confusion(const LabelMap& predicted, const LabelMap& truth, int m) {
    if (!(predicted.grid() == truth.grid())) throw ConfigError("confusion: grids differ");
    ConfusionMatrix cm;
    cm.m = m;
    cm.t.assign(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t p = 0; p < predicted.labels().size(); ++p) {
        const int pred = predicted.labels()[p];
        const int truth_label = truth.labels()[p];
        if (pred >= m || truth_label >= m) throw ConfigError("confusion: label out of range");
        ++cm.t[pred][truth_label];
    }
    return cm;
}

double overall_accuracy(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (total == 0) throw DataError("accuracy: empty confusion matrix");
    return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

double kappa(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (total == 0) throw DataError("kappa: empty confusion matrix");
    double chance = 0.0;
    for (int i = 0; i < cm.m; ++i) {
        std::uint64_t row = 0, col = 0;
        for (int j = 0; j < cm.m; ++j) {
            row += cm.t[i][j];
            col += cm.t[j][i];
        }
        chance += static_cast<double>(row) * static_cast<double>(col);
    }
    chance /= static_cast<double>(total) * static_cast<double>(total);
    if (chance == 1.0) throw DataError("kappa: undefined for a single-class tally");
    return (overall_accuracy(cm) - chance) / (1.0 - chance);
}

VolumeFractions volume_fractions(const std::vector<LabelMap>& maps, int m, int fluid_label,
                                 const std::vector<int>& matter_labels) {
    if (maps.empty()) throw ConfigError("volume fractions: no label maps");
    if (fluid_label < 0 || fluid_label >= m) throw ConfigError("volume fractions: fluid label out of range");
    for (int l : matter_labels)
        if (l < 0 || l >= m) throw ConfigError("volume fractions: matter label out of range");

    std::vector<std::uint64_t> counts(m, 0);
    std::uint64_t total = 0;
    for (const LabelMap& map : maps)
        for (int l : map.labels()) {
            if (l >= m) throw ConfigError("volume fractions: label out of range");
            ++counts[l];
            ++total;
        }

    VolumeFractions vf;
    vf.percent.resize(m);
    for (int i = 0; i < m; ++i) vf.percent[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(total);

    std::uint64_t matter = 0;
    for (int l : matter_labels) matter += counts[l];
    if (matter == 0) throw DataError("volume fractions: undefined fluid-matter ratio, matter volume is zero");
    vf.fluid_matter_ratio = static_cast<double>(counts[fluid_label]) / static_cast<double>(matter);
    return vf;
}

GeneralizationIndex generalization_index(const std::vector<double>& kappas) {
    if (kappas.size() < 2) throw ConfigError("generalization index: needs at least two slices");
    double lo = kappas[0], hi = kappas[0], sum = 0.0;
    for (double k : kappas) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
        sum += k;
    }
    GeneralizationIndex gi;
    gi.range = hi - lo;
    gi.mean = sum / static_cast<double>(kappas.size());
    if (gi.mean <= 0.0) throw DataError("generalization index: nonpositive mean kappa");
    gi.value = clamp01(1.0 - gi.range / gi.mean);
    return gi;
}

}  // namespace dwmc
