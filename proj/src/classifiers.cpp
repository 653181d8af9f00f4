#include "dwmc/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"
#include "train_util.hpp"

namespace dwmc {

void TrainingSet::validate() const {
    if (x.empty()) throw ConfigError("training set: empty");
    if (x.size() != y.size()) throw ConfigError("training set: sample/label count mismatch");
    if (class_count < 1) throw ConfigError("training set: class_count must be positive");
    std::vector<bool> seen(class_count, false);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (static_cast<int>(x[i].size()) != dim) throw ConfigError("training set: sample dimension mismatch");
        if (y[i] < 0 || y[i] >= class_count) throw ConfigError("training set: label out of range");
        seen[y[i]] = true;
    }
    for (int c = 0; c < class_count; ++c)
        if (!seen[c]) throw ConfigError("training set: class " + std::to_string(c) + " has no samples");
}

TrainingSet extract_training_set(const MultispectralImage& image, const LabelMap& mask,
                                 std::size_t per_class_cap, std::uint64_t seed) {
    if (!(image.grid() == mask.grid())) throw ConfigError("roi extraction: image and mask grids differ");
    const int m = mask.class_count();
    std::vector<std::vector<std::size_t>> per_class(m);
    for (std::size_t p = 0; p < mask.labels().size(); ++p) per_class[mask.labels()[p]].push_back(p);

    Rng rng(seed);
    TrainingSet ts;
    ts.dim = image.band_count();
    ts.class_count = m;
    for (int c = 0; c < m; ++c) {
        std::vector<std::size_t>& pixels = per_class[c];
        std::vector<std::size_t> chosen;
        if (per_class_cap > 0 && pixels.size() > per_class_cap) {
            for (std::size_t k : sample_without_replacement(rng, pixels.size(), per_class_cap))
                chosen.push_back(pixels[k]);
        } else {
            chosen = pixels;
        }
        for (std::size_t p : chosen) {
            std::vector<double> v(ts.dim);
            for (int i = 0; i < ts.dim; ++i) v[i] = image.band(i).values()[p];
            ts.x.push_back(std::move(v));
            ts.y.push_back(c);
        }
    }
    ts.validate();
    return ts;
}

TrainingSet training_set_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("training set: cannot open " + path);
    TrainingSet ts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> fields;
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                fields.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("training set: bad CSV cell '" + cell + "' in " + path);
            }
        }
        if (fields.size() < 2) throw ConfigError("training set: CSV rows need at least one feature and a label");
        const int label = static_cast<int>(fields.back());
        fields.pop_back();
        if (ts.dim == 0) ts.dim = static_cast<int>(fields.size());
        ts.x.push_back(std::move(fields));
        ts.y.push_back(label);
        ts.class_count = std::max(ts.class_count, label + 1);
    }
    ts.validate();
    return ts;
}

void training_set_to_csv(const TrainingSet& ts, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("training set: cannot write " + path);
    out.precision(17);
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        for (double v : ts.x[i]) out << v << ',';
        out << ts.y[i] << '\n';
    }
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = static_cast<int>(i);
    return best;
}

}  // namespace

int SomModel::predict(const std::vector<double>& x) const { return nearest_index(prototypes, x); }

int LvqModel::predict(const std::vector<double>& x) const { return nearest_index(codebooks, x); }

std::vector<double> FcmModel::memberships(const std::vector<double>& x) const {
    std::vector<double> u(centers.size());
    std::vector<double> d2(centers.size());
    for (std::size_t k = 0; k < centers.size(); ++k) d2[k] = squared_distance(centers[k], x);
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (d2[k] == 0.0) {
            for (double& v : u) v = 0.0;
            u[k] = 1.0;
            return u;
        }
    }
    const double p = 1.0 / (fuzzifier - 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        u[k] = std::pow(1.0 / d2[k], p);
        sum += u[k];
    }
    for (double& v : u) v /= sum;
    return u;
}

int FcmModel::predict(const std::vector<double>& x) const { return argmax_lowest(memberships(x)); }

std::vector<double> MlpModel::discriminants(const std::vector<double>& x) const {
    std::vector<double> h(hidden);
    for (int i = 0; i < hidden; ++i) {
        double z = w1[i][dim];
        for (int j = 0; j < dim; ++j) z += w1[i][j] * x[j];
        h[i] = 1.0 / (1.0 + std::exp(-z));
    }
    std::vector<double> y(class_count);
    for (int k = 0; k < class_count; ++k) {
        double z = w2[k][hidden];
        for (int i = 0; i < hidden; ++i) z += w2[k][i] * h[i];
        y[k] = 1.0 / (1.0 + std::exp(-z));
    }
    return y;
}

int MlpModel::predict(const std::vector<double>& x) const { return argmax_lowest(discriminants(x)); }

std::vector<double> RbfModel::basis(const std::vector<double>& x) const {
    std::vector<double> phi(centers.size());
    for (std::size_t c = 0; c < centers.size(); ++c)
        phi[c] = std::exp(-squared_distance(centers[c], x) / (2.0 * widths[c] * widths[c]));
    return phi;
}

std::vector<double> RbfModel::discriminants(const std::vector<double>& x) const {
    const std::vector<double> phi = basis(x);
    std::vector<double> y(class_count);
    for (int k = 0; k < class_count; ++k) {
        double z = w[k][phi.size()];
        for (std::size_t c = 0; c < phi.size(); ++c) z += w[k][c] * phi[c];
        y[k] = z;
    }
    return y;
}

int RbfModel::predict(const std::vector<double>& x) const { return argmax_lowest(discriminants(x)); }

std::vector<double> PolyModel::discriminants(const std::vector<double>& x) const {
    const std::vector<double> terms = expand_polynomial(x, degree);
    std::vector<double> y(class_count);
    for (int k = 0; k < class_count; ++k) {
        double z = 0.0;
        for (std::size_t t = 0; t < terms.size(); ++t) z += w[k][t] * terms[t];
        y[k] = z;
    }
    return y;
}

int PolyModel::predict(const std::vector<double>& x) const { return argmax_lowest(discriminants(x)); }

LabelMap classify_image(const SomModel& m, const MultispectralImage& img) {
    return classify_image(m, img, static_cast<int>(m.prototypes.size()));
}
LabelMap classify_image(const LvqModel& m, const MultispectralImage& img) {
    return classify_image(m, img, m.class_count);
}
LabelMap classify_image(const FcmModel& m, const MultispectralImage& img) {
    return classify_image(m, img, static_cast<int>(m.centers.size()));
}
LabelMap classify_image(const MlpModel& m, const MultispectralImage& img) {
    return classify_image(m, img, m.class_count);
}
LabelMap classify_image(const RbfModel& m, const MultispectralImage& img) {
    return classify_image(m, img, m.class_count);
}
LabelMap classify_image(const PolyModel& m, const MultispectralImage& img) {
    return classify_image(m, img, m.class_count);
}

namespace {

using nlohmann::json;

std::string dump(json j) { return j.dump(2) + "\n"; }

}  // namespace

std::string model_to_json_text(const SomModel& m) {
    return dump({{"kind", "KO"}, {"dim", m.dim}, {"prototypes", m.prototypes}});
}
std::string model_to_json_text(const LvqModel& m) {
    return dump({{"kind", "LVQ"}, {"dim", m.dim}, {"class_count", m.class_count}, {"codebooks", m.codebooks}});
}
std::string model_to_json_text(const FcmModel& m) {
    return dump({{"kind", "CM"}, {"dim", m.dim}, {"fuzzifier", m.fuzzifier}, {"centers", m.centers}});
}
std::string model_to_json_text(const MlpModel& m) {
    return dump({{"kind", "MLP"},
                 {"dim", m.dim},
                 {"hidden", m.hidden},
                 {"class_count", m.class_count},
                 {"w1", m.w1},
                 {"w2", m.w2}});
}
std::string model_to_json_text(const RbfModel& m) {
    return dump({{"kind", "RBF"},
                 {"dim", m.dim},
                 {"class_count", m.class_count},
                 {"centers", m.centers},
                 {"widths", m.widths},
                 {"w", m.w}});
}
std::string model_to_json_text(const PolyModel& m) {
    return dump(
        {{"kind", "PO"}, {"dim", m.dim}, {"degree", m.degree}, {"class_count", m.class_count}, {"w", m.w}});
}

}  // namespace dwmc
