#include "dwmc/image.hpp"

#include <random>

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

Band::Band(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (grid_.width < 1 || grid_.height < 1) throw ConfigError("band: grid must be at least 1x1");
    if (values_.size() != grid_.size()) throw ConfigError("band: value count does not match grid");
    for (double v : values_)
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("band: values must lie in [0,1]");
}

MultispectralImage::MultispectralImage(std::vector<Band> bands, std::vector<double> b_values)
    : bands_(std::move(bands)), b_values_(std::move(b_values)) {
    if (bands_.empty()) throw ConfigError("image: needs at least one band");
    if (b_values_.size() != bands_.size()) throw ConfigError("image: b_values count must match band count");
    for (std::size_t i = 1; i < bands_.size(); ++i)
        if (!(bands_[i].grid() == bands_[0].grid())) throw ConfigError("image: bands differ in grid");
    if (b_values_[0] < 0.0) throw ConfigError("image: b_values must be nonnegative");
    for (std::size_t i = 1; i < b_values_.size(); ++i)
        if (!(b_values_[i] > b_values_[i - 1])) throw ConfigError("image: b_values must be strictly increasing");
}

std::vector<double> MultispectralImage::pixel(int x, int y) const {
    std::vector<double> v(bands_.size());
    for (std::size_t i = 0; i < bands_.size(); ++i) v[i] = bands_[i].at(x, y);
    return v;
}

MultispectralImage stack_bands(std::vector<Band> bands, std::vector<double> b_values) {
    return MultispectralImage(std::move(bands), std::move(b_values));
}

MultispectralImage add_noise(const MultispectralImage& image, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw ConfigError("add_noise: sigma must be nonnegative");
    if (sigma == 0.0) return image;
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Band> out;
    out.reserve(image.bands().size());
    for (const Band& b : image.bands()) {
        std::vector<double> v = b.values();
        for (double& p : v) p = clamp01(p + sigma * gauss(rng));
        out.emplace_back(b.grid(), std::move(v));
    }
    return MultispectralImage(std::move(out), image.b_values());
}

LabelMap::LabelMap(Grid grid, std::vector<int> labels, int class_count)
    : grid_(grid), labels_(std::move(labels)), class_count_(class_count) {
    if (grid_.width < 1 || grid_.height < 1) throw ConfigError("label map: grid must be at least 1x1");
    if (labels_.size() != grid_.size()) throw ConfigError("label map: label count does not match grid");
    if (class_count_ < 1) throw ConfigError("label map: class_count must be positive");
    for (int l : labels_)
        if (l < 0 || l >= class_count_) throw ConfigError("label map: label out of range");
}

Volume::Volume(std::vector<MultispectralImage> slices) : slices_(std::move(slices)) {
    if (slices_.empty()) throw ConfigError("volume: needs at least one slice");
    for (std::size_t s = 1; s < slices_.size(); ++s) {
        if (!(slices_[s].grid() == slices_[0].grid())) throw ConfigError("volume: slices differ in grid");
        if (slices_[s].b_values() != slices_[0].b_values()) throw ConfigError("volume: slices differ in b_values");
    }
}

}  // namespace dwmc
