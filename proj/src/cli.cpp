#include "dwmc/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwmc/adc.hpp"
#include "dwmc/classifiers.hpp"
#include "dwmc/dialectics.hpp"
#include "dwmc/errors.hpp"
#include "dwmc/metrics.hpp"
#include "dwmc/morphology.hpp"
#include "dwmc/pgm.hpp"
#include "dwmc/phantom.hpp"
#include "dwmc/volume_io.hpp"

namespace dwmc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --seed flag wins over the DWMC_SEED environment override, which wins
// over the value stored in the spec/config file.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t file_value) {
    if (flag) return *flag;
    if (const char* env = std::getenv("DWMC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("DWMC_SEED is not a valid seed");
        }
    }
    return file_value;
}

StructuringElement se_from_name(const std::string& name) {
    if (name == "square3") return StructuringElement::Square3;
    if (name == "cross3") return StructuringElement::Cross3;
    throw ConfigError("unknown structuring element '" + name + "' (square3 or cross3)");
}

std::string format_fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string slice_tag(int s) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "slice%02d", s);
    return buf;
}

// ---- phantom ---------------------------------------------------------------

struct PhantomArgs {
    std::string spec_path;
    int size = 0;
    int slices = 0;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise;
    int bits = 16;
};

int cmd_phantom(const PhantomArgs& a) {
    PhantomSpec spec;
    if (!a.spec_path.empty()) {
        spec = load_phantom_spec(a.spec_path);
    } else if (a.size > 0) {
        spec = default_brain_phantom(a.size, a.slices > 0 ? a.slices : 8);
    } else {
        throw ConfigError("phantom: pass --spec or --size");
    }
    spec.seed = resolve_seed(a.seed, spec.seed);
    if (a.noise) spec.noise_sigma = *a.noise;
    spec.validate();

    PhantomResult result = synthesize_phantom(spec);
    write_volume(result.volume, a.out_dir, a.bits);
    write_truth(result.truth, a.out_dir);
    atomic_write_text((fs::path(a.out_dir) / "spec_used.json").string(), phantom_spec_to_json_text(spec));
    std::cout << "wrote " << result.volume.slice_count() << " slices ("
              << result.volume.slice(0).band_count() << " bands) to " << a.out_dir << "\n";
    return 0;
}

// ---- adc -------------------------------------------------------------------

struct AdcArgs {
    std::string volume_dir;
    std::string out_dir;
    AdcConfig cfg;
    int bits = 16;
};

int cmd_adc(const AdcArgs& a) {
    VolumeOnDisk vol = read_volume(a.volume_dir);
    std::vector<MultispectralImage> out;
    out.reserve(vol.volume.slice_count());
    for (int s = 0; s < vol.volume.slice_count(); ++s) {
        std::vector<Band> bands;
        bands.push_back(compute_adc(vol.volume.slice(s), a.cfg));
        out.emplace_back(std::move(bands), std::vector<double>{0.0});
    }
    write_volume(Volume(std::move(out)), a.out_dir, a.bits);
    if (!vol.truth.empty()) write_truth(vol.truth, a.out_dir);  // carried for later scoring
    std::cout << "wrote ADC volume to " << a.out_dir << "\n";
    return 0;
}

// ---- run -------------------------------------------------------------------

struct MethodScores {
    std::vector<LabelMap> labels;  // aligned to the truth label space
    SliceScores scores;
};

std::map<int, int> majority_merge_map(const LabelMap& predicted, const LabelMap& truth, int pred_classes) {
    std::vector<std::vector<std::uint64_t>> counts(pred_classes,
                                                   std::vector<std::uint64_t>(truth.class_count(), 0));
    for (std::size_t p = 0; p < predicted.labels().size(); ++p)
        ++counts[predicted.labels()[p]][truth.labels()[p]];
    std::map<int, int> merge;
    for (int l = 0; l < pred_classes; ++l) {
        int best = 0;
        std::uint64_t best_count = 0, total = 0;
        for (int c = 0; c < truth.class_count(); ++c) {
            total += counts[l][c];
            if (counts[l][c] > best_count) {
                best_count = counts[l][c];
                best = c;
            }
        }
        merge[l] = total > 0 ? best : 0;  // labels unseen on the train slice
    }
    return merge;
}

struct RunConfig {
    std::string volume_dir;
    std::string out_dir;
    int train_slice = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> methods;
    std::size_t samples_per_class = 200;
    std::string align = "majority";  // or "none"
    std::optional<std::map<int, int>> merge_map;  // ODC post-labeling
    int fluid_label = 1;
    std::vector<int> matter_labels = {2, 3};
    int clusters = 0;  // unsupervised cluster count; 0 = truth class count
    OdcConfig odc;
    json raw;  // config echo for the report
};

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("run: invalid config JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        cfg.volume_dir = j.at("volume_dir").get<std::string>();
        cfg.out_dir = j.at("out_dir").get<std::string>();
        cfg.train_slice = j.value("train_slice", 0);
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.methods = j.at("classifiers").get<std::vector<std::string>>();
        cfg.samples_per_class = j.value("samples_per_class", std::size_t{200});
        cfg.align = j.value("align", std::string{"majority"});
        if (j.contains("merge_map")) {
            std::map<int, int> merge;
            for (auto it = j["merge_map"].begin(); it != j["merge_map"].end(); ++it)
                merge[std::stoi(it.key())] = it.value().get<int>();
            cfg.merge_map = merge;
        }
        cfg.fluid_label = j.value("fluid_label", 1);
        cfg.matter_labels = j.value("matter_labels", std::vector<int>{2, 3});
        cfg.clusters = j.value("clusters", 0);
        if (j.contains("odc")) cfg.odc = odc_config_from_json_text(j["odc"].dump());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("run: bad config: ") + e.what());
    }
    if (cfg.align != "majority" && cfg.align != "none")
        throw ConfigError("run: align must be 'majority' or 'none'");
    cfg.raw = j;
    return cfg;
}

std::vector<std::vector<double>> slice_pixels(const MultispectralImage& img) {
    std::vector<std::vector<double>> data;
    data.reserve(img.grid().size());
    for (int y = 0; y < img.grid().height; ++y)
        for (int x = 0; x < img.grid().width; ++x) data.push_back(img.pixel(x, y));
    return data;
}

json hyper(const json& raw, const char* key) { return raw.contains(key) ? raw.at(key) : json::object(); }

// Train one method on the configured slice and classify the whole
// volume in the raw model label space.
std::vector<LabelMap> classify_method(const std::string& method, const RunConfig& cfg,
                                      const VolumeOnDisk& vol, const TrainingSet& ts, int clusters,
                                      DialecticalSystem* odc_out) {
    const MultispectralImage& train_img = vol.volume.slice(cfg.train_slice);
    std::vector<LabelMap> out;
    auto classify_all = [&](const auto& model) {
        for (int s = 0; s < vol.volume.slice_count(); ++s) out.push_back(classify_image(model, vol.volume.slice(s)));
    };
    const json& raw = cfg.raw;
    if (method == "KO") {
        const json h = hyper(raw, "som");
        const SomModel model = train_som(slice_pixels(train_img), clusters, h.value("iters", 200),
                                         h.value("eta0", 0.1), cfg.seed);
        classify_all(model);
    } else if (method == "CM") {
        const json h = hyper(raw, "fcm");
        const FcmModel model = train_fcm(slice_pixels(train_img), clusters, h.value("iters", 200),
                                         h.value("eta0", 0.1), h.value("fuzzifier", 2.0), cfg.seed);
        classify_all(model);
    } else if (method == "LVQ") {
        const json h = hyper(raw, "lvq");
        const LvqModel model = train_lvq(ts, h.value("iters", 200), h.value("eta0", 0.1), cfg.seed);
        classify_all(model);
    } else if (method == "MLP") {
        const json h = hyper(raw, "mlp");
        const MlpModel model = train_mlp(ts, h.value("hidden", 60), h.value("eta0", 0.2),
                                         h.value("max_iters", 1000), h.value("target_error", 0.05), cfg.seed);
        classify_all(model);
    } else if (method == "RBF") {
        const json h = hyper(raw, "rbf");
        const RbfModel model =
            train_rbf(ts, h.value("centers", 18), h.value("kmeans_iters", 200), h.value("eta0", 0.1),
                      h.value("out_iters", 200), cfg.seed);
        classify_all(model);
    } else if (method == "PO") {
        const json h = hyper(raw, "po");
        const PolyModel model = train_polynomial(ts, h.value("degree", 2), h.value("eta0", 0.1),
                                                 h.value("max_iters", 200), h.value("target_error", 0.05),
                                                 cfg.seed);
        classify_all(model);
    } else if (method == "ODC") {
        OdcConfig odc = cfg.odc;
        odc.seed = cfg.seed;
        DialecticalSystem system = train_odc(slice_pixels(train_img), odc);
        for (int s = 0; s < vol.volume.slice_count(); ++s)
            out.push_back(classify_odc(system, vol.volume.slice(s)));
        if (odc_out) *odc_out = system;
    } else {
        throw ConfigError("run: unknown classifier '" + method + "'");
    }
    return out;
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed_flag) {
    RunConfig cfg = parse_run_config(read_text_file(config_path));
    cfg.seed = resolve_seed(seed_flag, cfg.seed);

    VolumeOnDisk vol = read_volume(cfg.volume_dir);
    if (vol.truth.empty()) throw DataError("run: volume has no ground-truth label maps");
    if (cfg.train_slice < 0 || cfg.train_slice >= vol.volume.slice_count())
        throw ConfigError("run: train_slice out of range");

    const LabelMap& train_truth = vol.truth[cfg.train_slice];
    const int m = train_truth.class_count();
    const int clusters = cfg.clusters > 0 ? cfg.clusters : m;
    const TrainingSet ts = extract_training_set(vol.volume.slice(cfg.train_slice), train_truth,
                                                cfg.samples_per_class, cfg.seed);
    fs::create_directories(cfg.out_dir);

    const auto unsupervised_space = [](const std::string& name) {
        return name == "KO" || name == "CM" || name == "ODC";
    };
    for (const std::string& method : cfg.methods) {
        DialecticalSystem odc_system;
        std::vector<LabelMap> raw_maps =
            classify_method(method, cfg, vol, ts, clusters, method == "ODC" ? &odc_system : nullptr);

        const std::string tag = [&] {
            std::string t = method;
            for (char& c : t) c = static_cast<char>(std::tolower(c));
            return t;
        }();

        // Raw cluster output is kept for unsupervised methods; evaluation
        // runs in the truth label space after post-labeling.
        std::vector<LabelMap> aligned;
        if (unsupervised_space(method)) {
            for (int s = 0; s < vol.volume.slice_count(); ++s) {
                const std::string path =
                    (fs::path(cfg.out_dir) / ("labels_" + tag + "_raw_" + slice_tag(s) + ".pgm")).string();
                write_label_map(raw_maps[s], path + ".tmp");
                fs::rename(path + ".tmp", path);
            }
            std::map<int, int> merge;
            if (method == "ODC" && cfg.merge_map) {
                merge = *cfg.merge_map;
            } else if (cfg.align == "majority") {
                merge = majority_merge_map(raw_maps[cfg.train_slice], train_truth, raw_maps[0].class_count());
            }
            if (!merge.empty()) {
                for (const LabelMap& map : raw_maps) {
                    LabelMap r = relabel(map, merge);
                    // keep the truth class count so confusion matrices line up
                    aligned.emplace_back(r.grid(), r.labels(), std::max(r.class_count(), m));
                }
            } else {
                aligned = raw_maps;
            }
        } else {
            aligned = raw_maps;
        }

        for (int s = 0; s < vol.volume.slice_count(); ++s) {
            const std::string path =
                (fs::path(cfg.out_dir) / ("labels_" + tag + "_" + slice_tag(s) + ".pgm")).string();
            write_label_map(aligned[s], path + ".tmp");
            fs::rename(path + ".tmp", path);
        }

        const bool evaluable = !unsupervised_space(method) || cfg.align == "majority" ||
                               (method == "ODC" && cfg.merge_map.has_value());
        json report;
        report["tool"] = "dwmc";
        report["version"] = kToolVersion;
        report["method"] = method;
        report["seed"] = cfg.seed;
        report["config"] = cfg.raw;
        report["train_slice"] = cfg.train_slice;
        if (method == "ODC") {
            report["pole_count"] = odc_system.pole_count();
            atomic_write_text((fs::path(cfg.out_dir) / "odc_system.json").string(),
                              system_to_json_text(odc_system));
        }

        if (evaluable) {
            SliceScores scores;
            for (int s = 0; s < vol.volume.slice_count(); ++s) {
                const int mm = std::max(m, aligned[s].class_count());
                const ConfusionMatrix cm = build_confusion(aligned[s], vol.truth[s], mm);
                scores.phi.push_back(overall_accuracy(cm));
                scores.kappa.push_back(kappa(cm));
            }
            const VolumeFractions vf = volume_fractions(aligned, m, cfg.fluid_label, cfg.matter_labels);
            const GeneralizationIndex gi = generalization_index(scores.kappa);

            json per_slice = json::array();
            std::ostringstream csv;
            csv << "slice,phi,kappa\n";
            for (std::size_t s = 0; s < scores.phi.size(); ++s) {
                per_slice.push_back({{"slice", s}, {"phi", scores.phi[s]}, {"kappa", scores.kappa[s]}});
                csv << s << ',' << format_fixed(scores.phi[s], 6) << ',' << format_fixed(scores.kappa[s], 6)
                    << '\n';
            }
            report["per_slice"] = per_slice;
            report["volume_fractions_percent"] = vf.percent;
            report["fluid_matter_ratio"] = vf.fluid_matter_ratio;
            report["generalization"] = {
                {"index", gi.value}, {"kappa_range", gi.range}, {"kappa_mean", gi.mean}};
            atomic_write_text((fs::path(cfg.out_dir) / ("report_" + tag + ".csv")).string(), csv.str());
        } else {
            report["note"] = "label space not aligned to truth; scores omitted";
        }
        atomic_write_text((fs::path(cfg.out_dir) / ("report_" + tag + ".json")).string(),
                          report.dump(2) + "\n");
        std::cout << method << ": done\n";
    }
    return 0;
}

// ---- relabel / spectrum / similarity ----------------------------------------

int cmd_relabel(const std::string& in_path, const std::string& map_path, const std::string& out_path) {
    const LabelMap in = read_label_map(in_path);
    const LabelMap out = relabel(in, merge_map_from_json_text(read_text_file(map_path)));
    write_label_map(out, out_path + ".tmp");
    fs::rename(out_path + ".tmp", out_path);
    return 0;
}

int cmd_spectrum(const std::string& labels_path, int class_id, const std::string& se_name,
                 const std::string& out_csv, const std::string& out_json) {
    const LabelMap map = read_label_map(labels_path);
    const StructuringElement se = se_from_name(se_name);
    const PatternSpectrum ps = pattern_spectrum(class_mask(map, class_id), se);

    std::ostringstream csv;
    csv << "k,V,Xi,xi\n";
    for (std::size_t k = 0; k < ps.volumes.size(); ++k) {
        const double xi = k < ps.density.size() ? ps.density[k] : 0.0;
        csv << k << ',' << ps.volumes[k] << ',' << format_fixed(ps.cumulative[k], 9) << ','
            << format_fixed(xi, 9) << '\n';
    }
    atomic_write_text(out_csv, csv.str());
    if (!out_json.empty()) {
        json j;
        j["class_id"] = class_id;
        j["se"] = se_name;
        j["V"] = ps.volumes;
        j["Xi"] = ps.cumulative;
        j["xi"] = ps.density;
        atomic_write_text(out_json, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_similarity(const std::string& a_path, const std::string& b_path, int class_id,
                   const std::string& se_name) {
    const LabelMap a = read_label_map(a_path);
    const LabelMap b = read_label_map(b_path);
    if (!(a.grid() == b.grid())) throw ConfigError("similarity: label maps differ in grid");
    const double qm =
        morphological_similarity(class_mask(a, class_id), class_mask(b, class_id), se_from_name(se_name));
    std::cout << format_fixed(qm, 4) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"dwmc - multispectral DW-MR image classification toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    PhantomArgs phantom;
    CLI::App* p = app.add_subcommand("phantom", "synthesize a DW-MR phantom volume with ground truth");
    p->add_option("--spec", phantom.spec_path, "phantom spec JSON");
    p->add_option("--size", phantom.size, "default brain phantom: grid size (>= 32)");
    p->add_option("--slices", phantom.slices, "default brain phantom: slice count");
    p->add_option("--out", phantom.out_dir, "output volume directory")->required();
    std::optional<std::uint64_t> phantom_seed;
    p->add_option("--seed", phantom_seed, "seed override");
    p->add_option("--noise", phantom.noise, "noise sigma override");
    p->add_option("--bits", phantom.bits, "PGM bit depth (8 or 16)");

    AdcArgs adc;
    CLI::App* a = app.add_subcommand("adc", "compute per-slice ADC maps of a volume");
    a->add_option("--volume", adc.volume_dir, "input volume directory")->required();
    a->add_option("--out", adc.out_dir, "output volume directory")->required();
    a->add_option("--C", adc.cfg.c, "proportionality constant");
    a->add_option("--epsilon", adc.cfg.epsilon, "clamp floor before the logarithms");
    a->add_option("--scale", adc.cfg.output_scale, "raw ADC to [0,1] scale divisor");
    a->add_option("--bits", adc.bits, "PGM bit depth (8 or 16)");

    std::string run_config;
    std::optional<std::uint64_t> run_seed;
    CLI::App* r = app.add_subcommand("run", "train on one slice, classify and score the whole volume");
    r->add_option("--config", run_config, "run config JSON")->required();
    r->add_option("--seed", run_seed, "seed override");

    std::string rl_in, rl_map, rl_out;
    CLI::App* rl = app.add_subcommand("relabel", "apply a label merge map to a label map PGM");
    rl->add_option("--in", rl_in, "input label map PGM")->required();
    rl->add_option("--map", rl_map, "merge map JSON (label -> label)")->required();
    rl->add_option("--out", rl_out, "output label map PGM")->required();

    std::string sp_labels, sp_se = "square3", sp_csv, sp_json;
    int sp_class = 0;
    CLI::App* sp = app.add_subcommand("spectrum", "pattern spectrum of one class mask");
    sp->add_option("--labels", sp_labels, "label map PGM")->required();
    sp->add_option("--class-id", sp_class, "class label")->required();
    sp->add_option("--se", sp_se, "structuring element (square3 or cross3)");
    sp->add_option("--out", sp_csv, "output CSV (k,V,Xi,xi)")->required();
    sp->add_option("--json", sp_json, "optional JSON output");

    std::string sim_a, sim_b, sim_se = "square3";
    int sim_class = 0;
    CLI::App* sim = app.add_subcommand("similarity", "morphological similarity of one class in two maps");
    sim->add_option("--a", sim_a, "first label map PGM")->required();
    sim->add_option("--b", sim_b, "second (reference) label map PGM")->required();
    sim->add_option("--class-id", sim_class, "class label")->required();
    sim->add_option("--se", sim_se, "structuring element (square3 or cross3)");

    std::vector<const char*> argv;
    argv.push_back("dwmc");
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (p->parsed()) {
            phantom.seed = phantom_seed;
            return cmd_phantom(phantom);
        }
        if (a->parsed()) return cmd_adc(adc);
        if (r->parsed()) return cmd_run(run_config, run_seed);
        if (rl->parsed()) return cmd_relabel(rl_in, rl_map, rl_out);
        if (sp->parsed()) return cmd_spectrum(sp_labels, sp_class, sp_se, sp_csv, sp_json);
        if (sim->parsed()) return cmd_similarity(sim_a, sim_b, sim_class, sim_se);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace dwmc::cli
