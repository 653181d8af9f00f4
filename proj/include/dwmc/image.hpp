#pragma once

#include <cstdint>
#include <vector>

namespace dwmc {

struct Grid {
    int width = 0;
    int height = 0;

    std::size_t size() const { return static_cast<std::size_t>(width) * height; }
    bool operator==(const Grid&) const = default;
};

// One spectral band: normalized intensities in [0,1] over a grid.
class Band {
  public:
    Band() = default;
    Band(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * grid_.width + x]; }
    double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * grid_.width + x]; }

  private:
    Grid grid_;
    std::vector<double> values_;
};

// Co-registered bands over one grid; b_values carry the per-band
// diffusion exponents in s/mm^2 (nonnegative, strictly increasing).
class MultispectralImage {
  public:
    MultispectralImage() = default;
    MultispectralImage(std::vector<Band> bands, std::vector<double> b_values);

    const Grid& grid() const { return bands_.front().grid(); }
    int band_count() const { return static_cast<int>(bands_.size()); }
    const Band& band(int i) const { return bands_[i]; }
    Band& band(int i) { return bands_[i]; }
    const std::vector<Band>& bands() const { return bands_; }
    const std::vector<double>& b_values() const { return b_values_; }

    // Condition vector of one pixel: (f_1(u), ..., f_n(u)).
    std::vector<double> pixel(int x, int y) const;

  private:
    std::vector<Band> bands_;
    std::vector<double> b_values_;
};

MultispectralImage stack_bands(std::vector<Band> bands, std::vector<double> b_values);

// Additive Gaussian noise N(0, sigma^2) per pixel per band, clamped to
// [0,1]. sigma = 0 returns the input unchanged. Deterministic per seed;
// draws are consumed band by band in row-major pixel order.
MultispectralImage add_noise(const MultispectralImage& image, double sigma, std::uint64_t seed);

// Per-pixel class indices in 0..class_count-1.
class LabelMap {
  public:
    LabelMap() = default;
    LabelMap(Grid grid, std::vector<int> labels, int class_count);

    const Grid& grid() const { return grid_; }
    int class_count() const { return class_count_; }
    const std::vector<int>& labels() const { return labels_; }

    int at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * grid_.width + x]; }

  private:
    Grid grid_;
    std::vector<int> labels_;
    int class_count_ = 0;
};

// Ordered slices sharing grid and b_values.
class Volume {
  public:
    Volume() = default;
    explicit Volume(std::vector<MultispectralImage> slices);

    int slice_count() const { return static_cast<int>(slices_.size()); }
    const MultispectralImage& slice(int s) const { return slices_[s]; }
    const std::vector<MultispectralImage>& slices() const { return slices_; }

  private:
    std::vector<MultispectralImage> slices_;
};

}  // namespace dwmc
