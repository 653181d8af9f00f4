#pragma once

#include <vector>

#include "dwmc/image.hpp"
#include "dwmc/morphology_types.hpp"

namespace dwmc {

// The two basic digital discs, 3x3 masks centered on the origin.
enum class StructuringElement { Square3, Cross3 };

// Binary erosion/dilation with background padding (pixels outside the
// grid read as 0).
BinaryImage erode(const BinaryImage& img, StructuringElement se);
BinaryImage dilate(const BinaryImage& img, StructuringElement se);

// j-opening / j-closing: j erosions then j dilations (dually dilations
// then erosions); j = 0 is the identity.
BinaryImage open_j(const BinaryImage& img, StructuringElement se, int j);
BinaryImage close_j(const BinaryImage& img, StructuringElement se, int j);

// V(k): pixel sum of the k-opened image.
std::uint64_t granulometric_volume(const BinaryImage& img, StructuringElement se, int k);

// Xi[k] = 1 - V(k)/V(0) up to the first k with V(k) = 0; the pattern
// spectrum xi[k] = Xi[k+1] - Xi[k] is the size/shape density.
struct PatternSpectrum {
    std::vector<std::uint64_t> volumes;  // V(0..k_max)
    std::vector<double> cumulative;      // Xi(0..k_max), last entry 1
    std::vector<double> density;         // xi(0..k_max-1), sums to 1
};

PatternSpectrum pattern_spectrum(const BinaryImage& img, StructuringElement se);

// Q_M(f,g) = exp(-sqrt(sum (xi_f - xi_g)^2 / sum xi_g^2)), spectra
// zero-padded to a common length. 1 iff the spectra coincide;
// asymmetric in (f,g).
double morphological_similarity(const BinaryImage& f, const BinaryImage& g, StructuringElement se);

// Wang's fidelity index over two equal-grid bands, population moments.
double wang_fidelity(const Band& f, const Band& g);

// 1 where value >= threshold.
BinaryImage binarize(const Band& band, double threshold);

// Class mask of one label.
BinaryImage class_mask(const LabelMap& map, int label);

}  // namespace dwmc
