#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dwmc/image.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

// Pole similarity g_i(x) in [0,1]:
//   Gauss: exp(-||x - w_i||)
//   Ratio: (sum_k ||x - w_i||^2 / ||x - w_k||^2)^-1, the soft membership
//          form; if x coincides with a pole exactly, the lowest-index
//          coinciding pole gets 1 and every other pole 0.
enum class Anticontradiction { Gauss, Ratio };

// Winner weight adjustment per presentation:
//   Plain:    w += eta * (x - w)
//   GSquared: w += eta * g^2(x) * (x - w), g evaluated before the move
enum class UpdateRule { Plain, GSquared };

struct Pole {
    std::vector<double> weights;  // one entry per condition, each in [0,1]
    double force = 0.0;           // wins accumulated during the phase
};

struct OdcConfig {
    int n_phases = 5;        // historical phases
    int phase_length = 100;  // full passes over the data per phase
    int target_poles = 4;    // training stops once pole count <= this
    int initial_poles = 10;
    double eta0 = 0.1;
    double eta_floor = 0.01;  // linear decay floor over all scheduled steps
    double chi_max = 0.25;    // crisis weight perturbation scale
    double f_min = 0.01;      // minimum normalized force to survive a crisis
    double delta_min = 0.25;  // pole pairs below this contradiction merge
    Anticontradiction anticontradiction = Anticontradiction::Ratio;
    UpdateRule update_rule = UpdateRule::GSquared;
    bool synthesis = false;  // synthesis pole from the maximum contradiction
    std::uint64_t seed = 0;

    void validate() const;
};

struct CrisisReport {
    int removed_weak = 0;
    int removed_merged = 0;
    bool synthesized = false;
    bool degenerate = false;  // crisis would have removed every pole
};

class DialecticalSystem {
  public:
    DialecticalSystem() = default;
    DialecticalSystem(std::vector<Pole> poles, Anticontradiction kind, UpdateRule rule);

    int pole_count() const { return static_cast<int>(poles_.size()); }
    int condition_dim() const { return dim_; }
    const std::vector<Pole>& poles() const { return poles_; }
    Anticontradiction anticontradiction_kind() const { return kind_; }
    UpdateRule update_rule() const { return rule_; }

    double anticontradiction(int i, const std::vector<double>& x) const;
    std::vector<double> anticontradictions(const std::vector<double>& x) const;

    // argmax_i g_i(x), ties to the lowest index
    int winner_index(const std::vector<double>& x) const;

    // One pole-struggle step: adjusts the winner per the update rule and
    // increments its force. Returns the winner index.
    int evolution_step(const std::vector<double>& x, double eta);

    // f_i / max_j f_j; throws DataError when every force is zero.
    std::vector<double> normalized_forces() const;

    // delta_{i,j} = 1 - g_i(w_j), i != j
    double contradiction(int i, int j) const;

    // Survival marking and merging against the pre-crisis pole set, then
    // the optional synthesis pole. A pole survives iff its normalized
    // force exceeds cfg.f_min and no lower-indexed pole absorbed it
    // (pairs (i,j), i<j, with delta < delta_min discard j). If nothing
    // survives, the strongest pole is kept and the report is flagged
    // degenerate.
    CrisisReport qualitative_change(const OdcConfig& cfg);

    // Adds chi_max * N(0,1) to every weight coordinate, then clamps to [0,1].
    void crisis_perturbation(double chi_max, Rng& rng);

    void reset_forces();

    // qualitative_change + (optionally) crisis_perturbation + reset_forces
    CrisisReport revolutionary_crisis(const OdcConfig& cfg, Rng& rng, bool perturb = true);

  private:
    std::vector<double> squared_distances(const std::vector<double>& x) const;

    std::vector<Pole> poles_;
    int dim_ = 0;
    Anticontradiction kind_ = Anticontradiction::Gauss;
    UpdateRule rule_ = UpdateRule::Plain;
};

// Initial pole weights: `count` distinct data points (partial
// Fisher-Yates), topped up with uniform draws in [0,1]^dim when the data
// set is smaller than `count`.
std::vector<std::vector<double>> initial_pole_weights(const std::vector<std::vector<double>>& data,
                                                      int count, int dim, Rng& rng);

// Called after every evolution step with the global step index.
using TrainObserver = std::function<void(std::size_t step, const DialecticalSystem& system)>;

// Full training run: phases of phase_length passes in presentation
// order, eta decaying linearly from eta0 to eta_floor across all
// scheduled steps, a revolutionary crisis at each phase end. Stops after
// n_phases or once the pole count is down to target_poles; the crisis
// perturbation is skipped on the terminal crisis so the returned system
// keeps its converged weights.
DialecticalSystem train_odc(const std::vector<std::vector<double>>& data, const OdcConfig& cfg,
                            const TrainObserver& observer = {});

// Per-pixel winner_index.
LabelMap classify_odc(const DialecticalSystem& system, const MultispectralImage& image);

// Pointwise label substitution. The mapping must cover every label
// present; class_count becomes max mapped target + 1.
LabelMap relabel(const LabelMap& map, const std::map<int, int>& merge);

// JSON round-trips (schemas in docs/formats.md)
std::string odc_config_to_json_text(const OdcConfig& cfg);
OdcConfig odc_config_from_json_text(const std::string& text);
std::string system_to_json_text(const DialecticalSystem& system);
DialecticalSystem system_from_json_text(const std::string& text);
std::map<int, int> merge_map_from_json_text(const std::string& text);
std::string merge_map_to_json_text(const std::map<int, int>& merge);

}  // namespace dwmc
