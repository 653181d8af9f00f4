#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dwmc/image.hpp"

namespace dwmc {

// Labeled condition vectors. Every class 0..class_count-1 must have at
// least one sample.
struct TrainingSet {
    int dim = 0;
    int class_count = 0;
    std::vector<std::vector<double>> x;
    std::vector<int> y;

    void validate() const;
};

// Sample up to per_class_cap pixels of each class (0 = all), seeded.
TrainingSet extract_training_set(const MultispectralImage& image, const LabelMap& mask,
                                 std::size_t per_class_cap = 0, std::uint64_t seed = 0);

// CSV rows: x1,...,xn,label
TrainingSet training_set_from_csv(const std::string& path);
void training_set_to_csv(const TrainingSet& ts, const std::string& path);

// ---- prototype classifiers -------------------------------------------------

// 1-D Kohonen chain; winner and immediate neighbors move during the
// first half of the epochs, winner only afterwards.
struct SomModel {
    int dim = 0;
    std::vector<std::vector<double>> prototypes;

    int predict(const std::vector<double>& x) const;  // nearest prototype
};

SomModel train_som(const std::vector<std::vector<double>>& data, int m, int iters = 200,
                   double eta0 = 0.1, std::uint64_t seed = 0);

// LVQ1, one codebook per class, initialized at the class means.
struct LvqModel {
    int dim = 0;
    int class_count = 0;
    std::vector<std::vector<double>> codebooks;

    int predict(const std::vector<double>& x) const;
};

LvqModel train_lvq(const TrainingSet& ts, int iters = 200, double eta0 = 0.1, std::uint64_t seed = 0);

// Online fuzzy c-means: every center moves by eta * u_k^2 * (x - c_k),
// u the fuzzifier-2 membership.
struct FcmModel {
    int dim = 0;
    double fuzzifier = 2.0;
    std::vector<std::vector<double>> centers;

    std::vector<double> memberships(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;  // max membership
};

FcmModel train_fcm(const std::vector<std::vector<double>>& data, int m, int iters = 200,
                   double eta0 = 0.1, double fuzzifier = 2.0, std::uint64_t seed = 0);

// ---- discriminant networks -------------------------------------------------

// Two-layer sigmoid network trained by online backprop on one-hot
// targets; stops at mean squared error <= target_error or max_iters
// epochs.
struct MlpModel {
    int dim = 0;
    int hidden = 0;
    int class_count = 0;
    std::vector<std::vector<double>> w1;  // hidden x (dim+1), bias last
    std::vector<std::vector<double>> w2;  // classes x (hidden+1), bias last

    std::vector<double> discriminants(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;
};

MlpModel train_mlp(const TrainingSet& ts, int hidden = 60, double eta0 = 0.2, int max_iters = 1000,
                   double target_error = 0.05, std::uint64_t seed = 0);

// Analytic gradient of the summed squared error over `samples`, laid out
// as (w1 row-major, then w2 row-major); pairs with a finite-difference
// oracle in the tests.
std::vector<double> mlp_gradient(const MlpModel& model, const TrainingSet& samples);
double mlp_loss(const MlpModel& model, const TrainingSet& samples);  // mean squared error

// Gaussian RBF over online k-means centers, widths from the mean member
// distance (floored), linear delta-rule output layer.
struct RbfModel {
    int dim = 0;
    int class_count = 0;
    std::vector<std::vector<double>> centers;
    std::vector<double> widths;
    std::vector<std::vector<double>> w;  // classes x (centers+1), bias last

    std::vector<double> basis(const std::vector<double>& x) const;
    std::vector<double> discriminants(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;
};

RbfModel train_rbf(const TrainingSet& ts, int centers = 18, int kmeans_iters = 200, double eta0 = 0.1,
                   int out_iters = 200, std::uint64_t seed = 0);

// All monomials of total degree <= degree. Order: by total degree; within
// a degree, pure powers x_i^d first, then the mixed exponent vectors in
// descending lexicographic order. Degree 2, n = 3:
//   1, x1, x2, x3, x1^2, x2^2, x3^2, x1*x2, x1*x3, x2*x3
std::vector<double> expand_polynomial(const std::vector<double>& x, int degree = 2);
std::size_t polynomial_term_count(int dim, int degree);

// Per-class linear discriminants over the polynomial terms, delta rule on
// one-hot targets.
struct PolyModel {
    int dim = 0;
    int degree = 2;
    int class_count = 0;
    std::vector<std::vector<double>> w;  // classes x term_count

    std::vector<double> discriminants(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;
};

PolyModel train_polynomial(const TrainingSet& ts, int degree = 2, double eta0 = 0.1, int max_iters = 200,
                           double target_error = 0.05, std::uint64_t seed = 0);

// Smallest degree d in [2, max_degree) whose classification of `image`
// matches degree d+1 with Wang fidelity >= threshold (label maps scaled
// to [0,1]); max_degree when none stabilizes.
int select_polynomial_degree(const TrainingSet& ts, const MultispectralImage& image, int max_degree,
                             double threshold = 0.98, double eta0 = 0.1, int max_iters = 200,
                             double target_error = 0.05, std::uint64_t seed = 0);

// Per-pixel argmax / nearest-prototype classification; ties go to the
// lowest index.
template <typename Model>
LabelMap classify_image(const Model& model, const MultispectralImage& image, int class_count) {
    const Grid& g = image.grid();
    std::vector<int> labels(g.size());
    std::vector<double> x(static_cast<std::size_t>(image.band_count()));
    for (int y = 0; y < g.height; ++y)
        for (int xp = 0; xp < g.width; ++xp) {
            for (int i = 0; i < image.band_count(); ++i) x[i] = image.band(i).at(xp, y);
            labels[static_cast<std::size_t>(y) * g.width + xp] = model.predict(x);
        }
    return LabelMap(g, std::move(labels), class_count);
}

LabelMap classify_image(const SomModel& m, const MultispectralImage& img);
LabelMap classify_image(const LvqModel& m, const MultispectralImage& img);
LabelMap classify_image(const FcmModel& m, const MultispectralImage& img);
LabelMap classify_image(const MlpModel& m, const MultispectralImage& img);
LabelMap classify_image(const RbfModel& m, const MultispectralImage& img);
LabelMap classify_image(const PolyModel& m, const MultispectralImage& img);

// JSON round-trips
std::string model_to_json_text(const SomModel& m);
std::string model_to_json_text(const LvqModel& m);
std::string model_to_json_text(const FcmModel& m);
std::string model_to_json_text(const MlpModel& m);
std::string model_to_json_text(const RbfModel& m);
std::string model_to_json_text(const PolyModel& m);

}  // namespace dwmc
