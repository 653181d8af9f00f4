#pragma once

#include <cstdint>
#include <vector>

#include "dwmc/image.hpp"

namespace dwmc {

// t[i][j] = number of objects of class j classified as class i
// (row = predicted, column = truth).
struct ConfusionMatrix {
    int m = 0;
    std::vector<std::vector<std::uint64_t>> t;

    std::uint64_t total() const;
    std::uint64_t trace() const;
};

ConfusionMatrix build_confusion(const LabelMap& predicted, const LabelMap& truth, int m);

// phi: trace over total.
double overall_accuracy(const ConfusionMatrix& cm);

// kappa = (rho_v - rho_z) / (1 - rho_z) with rho_z the chance agreement
// sum_i row_i * col_i / total^2; undefined when rho_z = 1.
double kappa(const ConfusionMatrix& cm);

struct VolumeFractions {
    std::vector<double> percent;     // per class, sums to 100
    double fluid_matter_ratio = 0.0;
};

// Fractions over one or more label maps; ratio = fluid volume over the
// summed matter volumes.
VolumeFractions volume_fractions(const std::vector<LabelMap>& maps, int m, int fluid_label,
                                 const std::vector<int>& matter_labels);

struct SliceScores {
    std::vector<double> phi;
    std::vector<double> kappa;
};

struct GeneralizationIndex {
    double value = 0.0;  // 1 - range/mean, clamped to [0,1]
    double range = 0.0;  // kappa_max - kappa_min
    double mean = 0.0;
};

GeneralizationIndex generalization_index(const std::vector<double>& kappas);

}  // namespace dwmc
