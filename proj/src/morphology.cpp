#include "dwmc/morphology.hpp"

#include <cmath>

#include "dwmc/errors.hpp"

namespace dwmc {

BinaryImage::BinaryImage(Grid grid, std::vector<std::uint8_t> bits) : grid_(grid), bits_(std::move(bits)) {
    if (grid_.width < 1 || grid_.height < 1) throw ConfigError("binary image: grid must be at least 1x1");
    if (bits_.size() != grid_.size()) throw ConfigError("binary image: bit count does not match grid");
    for (std::uint8_t b : bits_)
        if (b > 1) throw ConfigError("binary image: values must be 0 or 1");
}

std::uint64_t BinaryImage::count_ones() const {
    std::uint64_t n = 0;
    for (std::uint8_t b : bits_) n += b;
    return n;
}

namespace {

struct Offsets {
    const int (*at)[2];
    int count;
};

constexpr int kSquare[9][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {0, 0},
                               {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
constexpr int kCross[5][2] = {{0, -1}, {-1, 0}, {0, 0}, {1, 0}, {0, 1}};

Offsets offsets_of(StructuringElement se) {
    if (se == StructuringElement::Square3) return {kSquare, 9};
    return {kCross, 5};
}

}  // namespace

BinaryImage erode(const BinaryImage& img, StructuringElement se) {
    const Offsets off = offsets_of(se);
    const Grid& g = img.grid();
    BinaryImage out = BinaryImage::zeros(g);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            bool all = true;
            for (int k = 0; k < off.count && all; ++k) {
                const int nx = x + off.at[k][0];
                const int ny = y + off.at[k][1];
                if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height || !img.at(nx, ny)) all = false;
            }
            out.set(x, y, all);
        }
    return out;
}

BinaryImage dilate(const BinaryImage& img, StructuringElement se) {
    const Offsets off = offsets_of(se);  // both discs are symmetric
    const Grid& g = img.grid();
    BinaryImage out = BinaryImage::zeros(g);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            bool any = false;
            for (int k = 0; k < off.count && !any; ++k) {
                const int nx = x + off.at[k][0];
                const int ny = y + off.at[k][1];
                if (nx >= 0 && ny >= 0 && nx < g.width && ny < g.height && img.at(nx, ny)) any = true;
            }
            out.set(x, y, any);
        }
    return out;
}

BinaryImage open_j(const BinaryImage& img, StructuringElement se, int j) {
    if (j < 0) throw ConfigError("morphology: opening order must be nonnegative");
    BinaryImage out = img;
    for (int k = 0; k < j; ++k) out = erode(out, se);
    for (int k = 0; k < j; ++k) out = dilate(out, se);
    return out;
}

BinaryImage close_j(const BinaryImage& img, StructuringElement se, int j) {
    if (j < 0) throw ConfigError("morphology: closing order must be nonnegative");
    BinaryImage out = img;
    for (int k = 0; k < j; ++k) out = dilate(out, se);
    for (int k = 0; k < j; ++k) out = erode(out, se);
    return out;
}

std::uint64_t granulometric_volume(const BinaryImage& img, StructuringElement se, int k) {
    return open_j(img, se, k).count_ones();
}

PatternSpectrum pattern_spectrum(const BinaryImage& img, StructuringElement se) {
    if (img.count_ones() == 0) throw DataError("pattern spectrum: undefined for an empty image");

    PatternSpectrum ps;
    // Iterated erosions; each V(k) re-dilates the k-fold erosion. A finite
    // image always empties, so the loop terminates.
    BinaryImage eroded = img;
    ps.volumes.push_back(eroded.count_ones());  // V(0), identity opening
    while (ps.volumes.back() > 0) {
        eroded = erode(eroded, se);
        BinaryImage opened = eroded;
        const int k = static_cast<int>(ps.volumes.size());
        for (int i = 0; i < k; ++i) opened = dilate(opened, se);
        ps.volumes.push_back(opened.count_ones());
    }

    const double v0 = static_cast<double>(ps.volumes[0]);
    for (std::uint64_t v : ps.volumes) ps.cumulative.push_back(1.0 - static_cast<double>(v) / v0);
    for (std::size_t k = 0; k + 1 < ps.cumulative.size(); ++k)
        ps.density.push_back(ps.cumulative[k + 1] - ps.cumulative[k]);
    return ps;
}

double morphological_similarity(const BinaryImage& f, const BinaryImage& g, StructuringElement se) {
    const PatternSpectrum sf = pattern_spectrum(f, se);
    const PatternSpectrum sg = pattern_spectrum(g, se);
    const std::size_t len = std::max(sf.density.size(), sg.density.size());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double xf = k < sf.density.size() ? sf.density[k] : 0.0;
        const double xg = k < sg.density.size() ? sg.density[k] : 0.0;
        num += (xf - xg) * (xf - xg);
        den += xg * xg;
    }
    return std::exp(-std::sqrt(num / den));
}

double wang_fidelity(const Band& f, const Band& g) {
    if (!(f.grid() == g.grid())) throw ConfigError("wang fidelity: grids differ");
    const std::size_t n = f.grid().size();
    double mf = 0.0, mg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mf += f.values()[i];
        mg += g.values()[i];
    }
    mf /= static_cast<double>(n);
    mg /= static_cast<double>(n);
    double vf = 0.0, vg = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double df = f.values()[i] - mf;
        const double dg = g.values()[i] - mg;
        vf += df * df;
        vg += dg * dg;
        cov += df * dg;
    }
    vf /= static_cast<double>(n);
    vg /= static_cast<double>(n);
    cov /= static_cast<double>(n);

    const double mean_term = mf * mf + mg * mg;
    const double var_term = vf + vg;
    if (mean_term == 0.0 || var_term == 0.0)
        throw DataError("wang fidelity: degenerate inputs (zero mean or variance sums)");
    return 4.0 * mf * mg * cov / (mean_term * var_term);
}

BinaryImage binarize(const Band& band, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("binarize: threshold must lie in [0,1]");
    std::vector<std::uint8_t> bits(band.values().size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = band.values()[i] >= threshold ? 1 : 0;
    return BinaryImage(band.grid(), std::move(bits));
}

BinaryImage class_mask(const LabelMap& map, int label) {
    std::vector<std::uint8_t> bits(map.labels().size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = map.labels()[i] == label ? 1 : 0;
    return BinaryImage(map.grid(), std::move(bits));
}

}  // namespace dwmc
