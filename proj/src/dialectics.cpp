#include "dwmc/dialectics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "json.hpp"

#include "dwmc/errors.hpp"

namespace dwmc {

void OdcConfig::validate() const {
    if (n_phases < 1) throw ConfigError("odc: n_phases must be at least 1");
    if (phase_length < 1) throw ConfigError("odc: phase_length must be at least 1");
    if (target_poles < 1 || target_poles > initial_poles)
        throw ConfigError("odc: need 1 <= target_poles <= initial_poles");
    if (!(eta0 > 0.0 && eta0 < 1.0)) throw ConfigError("odc: eta0 must lie in (0,1)");
    if (!(eta_floor > 0.0)) throw ConfigError("odc: eta_floor must be positive");
    if (!(chi_max >= 0.0 && chi_max <= 1.0)) throw ConfigError("odc: chi_max must lie in [0,1]");
    if (!(f_min >= 0.0 && f_min <= 1.0)) throw ConfigError("odc: f_min must lie in [0,1]");
    if (!(delta_min >= 0.0 && delta_min <= 1.0)) throw ConfigError("odc: delta_min must lie in [0,1]");
}

DialecticalSystem::DialecticalSystem(std::vector<Pole> poles, Anticontradiction kind, UpdateRule rule)
    : poles_(std::move(poles)), kind_(kind), rule_(rule) {
    if (poles_.empty()) throw ConfigError("system: needs at least one pole");
    dim_ = static_cast<int>(poles_[0].weights.size());
    if (dim_ < 1) throw ConfigError("system: condition dimension must be positive");
    for (const Pole& p : poles_)
        if (static_cast<int>(p.weights.size()) != dim_) throw ConfigError("system: pole dimension mismatch");
}

std::vector<double> DialecticalSystem::squared_distances(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim_) throw ConfigError("system: condition vector dimension mismatch");
    std::vector<double> d2(poles_.size());
    for (std::size_t i = 0; i < poles_.size(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double d = x[j] - poles_[i].weights[j];
            acc += d * d;
        }
        d2[i] = acc;
    }
    return d2;
}

std::vector<double> DialecticalSystem::anticontradictions(const std::vector<double>& x) const {
    const std::vector<double> d2 = squared_distances(x);
    std::vector<double> g(d2.size());
    if (kind_ == Anticontradiction::Gauss) {
        for (std::size_t i = 0; i < d2.size(); ++i) g[i] = std::exp(-std::sqrt(d2[i]));
        return g;
    }
    for (std::size_t i = 0; i < d2.size(); ++i) {
        if (d2[i] == 0.0) {  // exact coincidence: lowest such pole takes all
            for (std::size_t k = 0; k < d2.size(); ++k) g[k] = 0.0;
            g[i] = 1.0;
            return g;
        }
    }
    double sum = 0.0;
    for (double v : d2) sum += 1.0 / v;
    for (std::size_t i = 0; i < d2.size(); ++i) g[i] = (1.0 / d2[i]) / sum;
    return g;
}

double DialecticalSystem::anticontradiction(int i, const std::vector<double>& x) const {
    if (i < 0 || i >= pole_count()) throw ConfigError("system: pole index out of range");
    if (kind_ == Anticontradiction::Gauss) {
        const std::vector<double> d2 = squared_distances(x);
        return std::exp(-std::sqrt(d2[i]));
    }
    return anticontradictions(x)[i];
}

int DialecticalSystem::winner_index(const std::vector<double>& x) const {
    const std::vector<double> g = anticontradictions(x);
    int best = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] > g[best]) best = static_cast<int>(i);
    return best;
}

int DialecticalSystem::evolution_step(const std::vector<double>& x, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("system: eta must lie in (0,1]");
    const int k = winner_index(x);
    double scale = eta;
    if (rule_ == UpdateRule::GSquared) {
        const double g = anticontradiction(k, x);
        scale = eta * g * g;
    }
    Pole& winner = poles_[k];
    for (int j = 0; j < dim_; ++j) winner.weights[j] += scale * (x[j] - winner.weights[j]);
    winner.force += 1.0;
    return k;
}

std::vector<double> DialecticalSystem::normalized_forces() const {
    double max_force = 0.0;
    for (const Pole& p : poles_) max_force = std::max(max_force, p.force);
    if (max_force <= 0.0) throw DataError("system: degenerate phase, all forces zero");
    std::vector<double> nf(poles_.size());
    for (std::size_t i = 0; i < poles_.size(); ++i) nf[i] = poles_[i].force / max_force;
    return nf;
}

double DialecticalSystem::contradiction(int i, int j) const {
    if (i == j) throw ConfigError("system: contradiction needs two distinct poles");
    if (i < 0 || j < 0 || i >= pole_count() || j >= pole_count())
        throw ConfigError("system: pole index out of range");
    return 1.0 - anticontradiction(i, poles_[j].weights);
}

CrisisReport DialecticalSystem::qualitative_change(const OdcConfig& cfg) {
    CrisisReport report;
    const int n = pole_count();
    const std::vector<double> nf = normalized_forces();

    std::vector<bool> weak(n), merged(n, false);
    for (int i = 0; i < n; ++i) weak[i] = !(nf[i] > cfg.f_min);

    // Contradictions over the pre-crisis set; pairs in ascending (i,j)
    // order, the lower index absorbing the higher.
    std::vector<std::vector<double>> delta(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            delta[i][j] = contradiction(i, j);
            if (delta[i][j] < cfg.delta_min) merged[j] = true;
        }

    std::vector<int> survivors;
    for (int i = 0; i < n; ++i) {
        if (weak[i] && !merged[i]) ++report.removed_weak;
        if (merged[i]) ++report.removed_merged;
        if (!weak[i] && !merged[i]) survivors.push_back(i);
    }
    if (survivors.empty()) {
        int strongest = 0;
        for (int i = 1; i < n; ++i)
            if (poles_[i].force > poles_[strongest].force) strongest = i;
        survivors.push_back(strongest);
        report.degenerate = true;
    }

    Pole synthesis_pole;
    bool have_synthesis = false;
    if (cfg.synthesis && static_cast<int>(survivors.size()) > cfg.target_poles && survivors.size() >= 2) {
        double best = -1.0;
        int bi = -1, bj = -1;
        for (std::size_t a = 0; a < survivors.size(); ++a)
            for (std::size_t b = a + 1; b < survivors.size(); ++b) {
                const double d = delta[survivors[a]][survivors[b]];
                if (d > best) {
                    best = d;
                    bi = survivors[a];
                    bj = survivors[b];
                }
            }
        // Interleave the main contradiction's weights: coordinates
        // 1,3,5,... (1-based) from the first pole, the rest from the second.
        synthesis_pole.weights.resize(dim_);
        for (int k = 0; k < dim_; ++k)
            synthesis_pole.weights[k] = (k % 2 == 0) ? poles_[bi].weights[k] : poles_[bj].weights[k];
        have_synthesis = true;
        report.synthesized = true;
    }

    std::vector<Pole> next;
    next.reserve(survivors.size() + 1);
    for (int idx : survivors) next.push_back(std::move(poles_[idx]));
    if (have_synthesis) next.push_back(std::move(synthesis_pole));
    poles_ = std::move(next);
    return report;
}

void DialecticalSystem::crisis_perturbation(double chi_max, Rng& rng) {
    if (chi_max == 0.0) return;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Pole& p : poles_)
        for (double& w : p.weights) w = clamp01(w + chi_max * gauss(rng));
}

void DialecticalSystem::reset_forces() {
    for (Pole& p : poles_) p.force = 0.0;
}

CrisisReport DialecticalSystem::revolutionary_crisis(const OdcConfig& cfg, Rng& rng, bool perturb) {
    CrisisReport report = qualitative_change(cfg);
    if (perturb) crisis_perturbation(cfg.chi_max, rng);
    reset_forces();
    return report;
}

std::vector<std::vector<double>> initial_pole_weights(const std::vector<std::vector<double>>& data,
                                                      int count, int dim, Rng& rng) {
    std::vector<std::vector<double>> weights;
    weights.reserve(count);
    const std::vector<std::size_t> picks = sample_without_replacement(rng, data.size(), count);
    for (std::size_t idx : picks) weights.push_back(data[idx]);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    while (static_cast<int>(weights.size()) < count) {
        std::vector<double> w(dim);
        for (double& v : w) v = uniform(rng);
        weights.push_back(std::move(w));
    }
    return weights;
}

DialecticalSystem train_odc(const std::vector<std::vector<double>>& data, const OdcConfig& cfg,
                            const TrainObserver& observer) {
    cfg.validate();
    if (data.empty()) throw ConfigError("odc: empty training data");
    const int dim = static_cast<int>(data[0].size());
    for (const auto& x : data)
        if (static_cast<int>(x.size()) != dim) throw ConfigError("odc: inconsistent condition dimensions");

    Rng rng(cfg.seed);
    std::vector<Pole> poles;
    for (auto& w : initial_pole_weights(data, cfg.initial_poles, dim, rng))
        poles.push_back(Pole{std::move(w), 0.0});
    DialecticalSystem system(std::move(poles), cfg.anticontradiction, cfg.update_rule);

    const std::size_t total_steps =
        static_cast<std::size_t>(cfg.n_phases) * cfg.phase_length * data.size();
    std::size_t step = 0;
    for (int phase = 0; phase < cfg.n_phases; ++phase) {
        system.reset_forces();
        for (int pass = 0; pass < cfg.phase_length; ++pass) {
            for (const auto& x : data) {
                double eta = cfg.eta0;
                if (total_steps > 1)
                    eta = cfg.eta0 + (cfg.eta_floor - cfg.eta0) *
                                         (static_cast<double>(step) / static_cast<double>(total_steps - 1));
                system.evolution_step(x, eta);
                if (observer) observer(step, system);
                ++step;
            }
        }
        system.qualitative_change(cfg);
        const bool terminal = phase + 1 == cfg.n_phases || system.pole_count() <= cfg.target_poles;
        if (!terminal) system.crisis_perturbation(cfg.chi_max, rng);
        system.reset_forces();
        if (terminal) break;
    }
    return system;
}

LabelMap classify_odc(const DialecticalSystem& system, const MultispectralImage& image) {
    if (image.band_count() != system.condition_dim())
        throw ConfigError("odc: image band count does not match system dimension");
    const Grid& g = image.grid();
    std::vector<int> labels(g.size());
    std::vector<double> x(system.condition_dim());
    for (int y = 0; y < g.height; ++y)
        for (int xpos = 0; xpos < g.width; ++xpos) {
            for (int i = 0; i < image.band_count(); ++i) x[i] = image.band(i).at(xpos, y);
            labels[static_cast<std::size_t>(y) * g.width + xpos] = system.winner_index(x);
        }
    return LabelMap(g, std::move(labels), system.pole_count());
}

LabelMap relabel(const LabelMap& map, const std::map<int, int>& merge) {
    int max_target = 0;
    for (const auto& [from, to] : merge) {
        if (to < 0) throw ConfigError("relabel: negative target label");
        max_target = std::max(max_target, to);
    }
    std::vector<int> labels = map.labels();
    for (int& l : labels) {
        auto it = merge.find(l);
        if (it == merge.end()) throw ConfigError("relabel: no mapping for label " + std::to_string(l));
        l = it->second;
    }
    return LabelMap(map.grid(), std::move(labels), max_target + 1);
}

namespace {

using nlohmann::json;

std::string kind_name(Anticontradiction k) { return k == Anticontradiction::Gauss ? "gauss" : "ratio"; }
std::string rule_name(UpdateRule r) { return r == UpdateRule::Plain ? "plain" : "g_squared"; }

Anticontradiction kind_from_name(const std::string& s) {
    if (s == "gauss") return Anticontradiction::Gauss;
    if (s == "ratio") return Anticontradiction::Ratio;
    throw ConfigError("odc: unknown anticontradiction '" + s + "'");
}

UpdateRule rule_from_name(const std::string& s) {
    if (s == "plain") return UpdateRule::Plain;
    if (s == "g_squared") return UpdateRule::GSquared;
    throw ConfigError("odc: unknown update rule '" + s + "'");
}

}  // namespace

std::string odc_config_to_json_text(const OdcConfig& cfg) {
    json j;
    j["n_phases"] = cfg.n_phases;
    j["phase_length"] = cfg.phase_length;
    j["target_poles"] = cfg.target_poles;
    j["initial_poles"] = cfg.initial_poles;
    j["eta0"] = cfg.eta0;
    j["eta_floor"] = cfg.eta_floor;
    j["chi_max"] = cfg.chi_max;
    j["f_min"] = cfg.f_min;
    j["delta_min"] = cfg.delta_min;
    j["anticontradiction"] = kind_name(cfg.anticontradiction);
    j["update_rule"] = rule_name(cfg.update_rule);
    j["synthesis"] = cfg.synthesis;
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

OdcConfig odc_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("odc: invalid JSON: ") + e.what());
    }
    OdcConfig cfg;
    try {
        cfg.n_phases = j.value("n_phases", cfg.n_phases);
        cfg.phase_length = j.value("phase_length", cfg.phase_length);
        cfg.target_poles = j.value("target_poles", cfg.target_poles);
        cfg.initial_poles = j.value("initial_poles", cfg.initial_poles);
        cfg.eta0 = j.value("eta0", cfg.eta0);
        cfg.eta_floor = j.value("eta_floor", cfg.eta_floor);
        cfg.chi_max = j.value("chi_max", cfg.chi_max);
        cfg.f_min = j.value("f_min", cfg.f_min);
        cfg.delta_min = j.value("delta_min", cfg.delta_min);
        if (j.contains("anticontradiction")) cfg.anticontradiction = kind_from_name(j["anticontradiction"]);
        if (j.contains("update_rule")) cfg.update_rule = rule_from_name(j["update_rule"]);
        cfg.synthesis = j.value("synthesis", cfg.synthesis);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("odc: bad config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string system_to_json_text(const DialecticalSystem& system) {
    json j;
    j["kind"] = "odc_system";
    j["schema_version"] = 1;
    j["condition_dim"] = system.condition_dim();
    j["anticontradiction"] = kind_name(system.anticontradiction_kind());
    j["update_rule"] = rule_name(system.update_rule());
    json poles = json::array();
    for (const Pole& p : system.poles()) poles.push_back({{"weights", p.weights}, {"force", p.force}});
    j["poles"] = poles;
    return j.dump(2) + "\n";
}

DialecticalSystem system_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("odc: invalid system JSON: ") + e.what());
    }
    try {
        std::vector<Pole> poles;
        for (const json& p : j.at("poles"))
            poles.push_back(Pole{p.at("weights").get<std::vector<double>>(), p.value("force", 0.0)});
        return DialecticalSystem(std::move(poles), kind_from_name(j.at("anticontradiction")),
                                 rule_from_name(j.at("update_rule")));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("odc: bad system: ") + e.what());
    }
}

std::map<int, int> merge_map_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("merge map: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("merge map: expected an object of label -> label");
    std::map<int, int> merge;
    for (auto it = j.begin(); it != j.end(); ++it) {
        try {
            merge[std::stoi(it.key())] = it.value().get<int>();
        } catch (const std::exception&) {
            throw ConfigError("merge map: keys and values must be integer labels");
        }
    }
    return merge;
}

std::string merge_map_to_json_text(const std::map<int, int>& merge) {
    json j = json::object();
    for (const auto& [from, to] : merge) j[std::to_string(from)] = to;
    return j.dump(2) + "\n";
}

}  // namespace dwmc
