#include "dwmc/phantom.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

bool Region::contains(int x, int y) const {
    if (shape == Shape::Rect) return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    const double dx = (x - cx) / rx;
    const double dy = (y - cy) / ry;
    return dx * dx + dy * dy <= 1.0;
}

void PhantomSpec::validate() const {
    if (grid.width < 1 || grid.height < 1) throw ConfigError("phantom: grid must be at least 1x1");
    if (slice_count < 1) throw ConfigError("phantom: slice_count must be positive");
    if (tissues.empty()) throw ConfigError("phantom: needs at least one tissue");
    if (!(k >= 0.0 && k <= 1.0)) throw ConfigError("phantom: K must lie in [0,1]");
    if (te < 0.0) throw ConfigError("phantom: TE must be nonnegative");
    if (noise_sigma < 0.0) throw ConfigError("phantom: noise_sigma must be nonnegative");
    if (b_values.empty() || b_values[0] < 0.0) throw ConfigError("phantom: b_values must be nonnegative");
    for (std::size_t i = 1; i < b_values.size(); ++i)
        if (!(b_values[i] > b_values[i - 1])) throw ConfigError("phantom: b_values must be strictly increasing");
    for (const Tissue& t : tissues) {
        if (!(t.rho >= 0.0 && t.rho <= 1.0)) throw ConfigError("phantom: tissue rho must lie in [0,1]");
        if (!(t.t2 > 0.0)) throw ConfigError("phantom: tissue T2 must be positive");
        if (t.d < 0.0) throw ConfigError("phantom: tissue D must be nonnegative");
    }
    for (const Region& r : regions) {
        if (r.tissue < 0 || r.tissue >= static_cast<int>(tissues.size()))
            throw ConfigError("phantom: region references unknown tissue");
        if (r.z0 < 0 || r.z1 >= slice_count || r.z0 > r.z1) throw ConfigError("phantom: region z-range out of volume");
        if (r.shape == Region::Shape::Rect) {
            if (r.x0 < 0 || r.y0 < 0 || r.x1 >= grid.width || r.y1 >= grid.height || r.x0 > r.x1 || r.y0 > r.y1)
                throw ConfigError("phantom: rect region outside grid");
        } else {
            if (!(r.rx > 0.0 && r.ry > 0.0)) throw ConfigError("phantom: ellipse semi-axes must be positive");
            if (r.cx - r.rx < -0.5 || r.cx + r.rx > grid.width - 0.5 || r.cy - r.ry < -0.5 ||
                r.cy + r.ry > grid.height - 0.5)
                throw ConfigError("phantom: ellipse region outside grid");
        }
    }
}

PhantomResult synthesize_phantom(const PhantomSpec& spec) {
    spec.validate();
    const int n_bands = static_cast<int>(spec.b_values.size());
    const int m = static_cast<int>(spec.tissues.size());

    // Per-tissue noiseless condition vector; the whole slice is a lookup.
    std::vector<std::vector<double>> signal(m, std::vector<double>(n_bands));
    for (int t = 0; t < m; ++t) {
        const Tissue& tis = spec.tissues[t];
        const double amp = spec.k * tis.rho * std::exp(-spec.te / tis.t2);
        for (int i = 0; i < n_bands; ++i) signal[t][i] = clamp01(amp * std::exp(-spec.b_values[i] * tis.d));
    }

    Rng rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<MultispectralImage> slices;
    std::vector<LabelMap> truth;
    slices.reserve(spec.slice_count);
    truth.reserve(spec.slice_count);
    for (int s = 0; s < spec.slice_count; ++s) {
        std::vector<int> labels(spec.grid.size(), 0);
        for (int y = 0; y < spec.grid.height; ++y) {
            for (int x = 0; x < spec.grid.width; ++x) {
                int tissue = 0;
                for (auto it = spec.regions.rbegin(); it != spec.regions.rend(); ++it) {
                    if (s < it->z0 || s > it->z1) continue;
                    if (it->contains(x, y)) {
                        tissue = it->tissue;
                        break;
                    }
                }
                labels[static_cast<std::size_t>(y) * spec.grid.width + x] = tissue;
            }
        }
        std::vector<Band> bands;
        bands.reserve(n_bands);
        for (int i = 0; i < n_bands; ++i) {
            std::vector<double> v(spec.grid.size());
            for (std::size_t p = 0; p < v.size(); ++p) v[p] = signal[labels[p]][i];
            if (spec.noise_sigma > 0.0)
                for (double& p : v) p = clamp01(p + spec.noise_sigma * gauss(rng));
            bands.emplace_back(spec.grid, std::move(v));
        }
        slices.emplace_back(std::move(bands), spec.b_values);
        truth.emplace_back(spec.grid, std::move(labels), m);
    }
    return PhantomResult{Volume(std::move(slices)), std::move(truth)};
}

PhantomSpec default_brain_phantom(int size, int slices) {
    if (size < 32) throw ConfigError("default_brain_phantom: size must be at least 32");
    if (slices < 1) throw ConfigError("default_brain_phantom: slices must be positive");

    PhantomSpec spec;
    spec.grid = Grid{size, size};
    spec.slice_count = slices;
    spec.k = 1.0;
    spec.te = 5.0;
    spec.b_values = {0.0, 500.0, 1000.0};
    spec.noise_sigma = 0.0;
    spec.seed = 20080917;
    // rho/T2 are tuned for class separation, not tissue realism; D follows
    // the usual order WM < GM < CSF. Tissue 0 doubles as skull (rho = 0, so
    // the low D is inert and the ring stays in the background class).
    spec.tissues = {
        Tissue{"background", 0.0, 50.0, 0.0002},
        Tissue{"csf", 0.85, 2000.0, 0.003},
        Tissue{"gray_matter", 0.505, 500.0, 0.0009},
        Tissue{"white_matter", 0.96, 500.0, 0.0007},
    };

    const double c = (size - 1) / 2.0;
    for (int s = 0; s < slices; ++s) {
        const double z = slices > 1 ? 2.0 * s / (slices - 1) - 1.0 : 0.0;
        const double p = std::sqrt(1.0 - 0.3 * z * z);
        auto ellipse = [&](int tissue, double ox, double rx, double ry) {
            Region r;
            r.shape = Region::Shape::Ellipse;
            r.tissue = tissue;
            r.cx = c + ox * size;
            r.cy = c;
            r.rx = rx * size * p;
            r.ry = ry * size * p;
            r.z0 = r.z1 = s;
            return r;
        };
        spec.regions.push_back(ellipse(0, 0.0, 0.46, 0.42));   // skull ring
        spec.regions.push_back(ellipse(2, 0.0, 0.40, 0.36));   // gray-matter rim
        spec.regions.push_back(ellipse(3, 0.0, 0.30, 0.26));   // white-matter core
        spec.regions.push_back(ellipse(1, -0.10, 0.07, 0.13));  // left ventricle
        spec.regions.push_back(ellipse(1, 0.10, 0.07, 0.13));   // right ventricle
    }
    spec.validate();
    return spec;
}

namespace {

using nlohmann::json;

Region region_from_json(const json& j) {
    Region r;
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "ellipse") {
        r.shape = Region::Shape::Ellipse;
        r.cx = j.at("cx").get<double>();
        r.cy = j.at("cy").get<double>();
        r.rx = j.at("rx").get<double>();
        r.ry = j.at("ry").get<double>();
    } else if (shape == "rect") {
        r.shape = Region::Shape::Rect;
        r.x0 = j.at("x0").get<int>();
        r.y0 = j.at("y0").get<int>();
        r.x1 = j.at("x1").get<int>();
        r.y1 = j.at("y1").get<int>();
    } else {
        throw ConfigError("phantom: unknown region shape '" + shape + "'");
    }
    r.tissue = j.at("tissue").get<int>();
    r.z0 = j.at("z0").get<int>();
    r.z1 = j.at("z1").get<int>();
    return r;
}

json region_to_json(const Region& r) {
    json j;
    if (r.shape == Region::Shape::Ellipse) {
        j["shape"] = "ellipse";
        j["cx"] = r.cx;
        j["cy"] = r.cy;
        j["rx"] = r.rx;
        j["ry"] = r.ry;
    } else {
        j["shape"] = "rect";
        j["x0"] = r.x0;
        j["y0"] = r.y0;
        j["x1"] = r.x1;
        j["y1"] = r.y1;
    }
    j["tissue"] = r.tissue;
    j["z0"] = r.z0;
    j["z1"] = r.z1;
    return j;
}

}  // namespace

PhantomSpec phantom_spec_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("phantom: invalid JSON: ") + e.what());
    }
    try {
        PhantomSpec spec;
        spec.grid = Grid{j.at("width").get<int>(), j.at("height").get<int>()};
        spec.slice_count = j.at("slices").get<int>();
        spec.k = j.at("k").get<double>();
        spec.te = j.at("te").get<double>();
        spec.b_values = j.at("b_values").get<std::vector<double>>();
        spec.noise_sigma = j.value("noise_sigma", 0.0);
        spec.seed = j.value("seed", std::uint64_t{0});
        for (const json& t : j.at("tissues"))
            spec.tissues.push_back(Tissue{t.value("name", std::string{}), t.at("rho").get<double>(),
                                          t.at("t2").get<double>(), t.at("d").get<double>()});
        for (const json& r : j.at("regions")) spec.regions.push_back(region_from_json(r));
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("phantom: bad spec: ") + e.what());
    }
}

PhantomSpec load_phantom_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("phantom: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return phantom_spec_from_json_text(ss.str());
}

std::string phantom_spec_to_json_text(const PhantomSpec& spec) {
    json j;
    j["schema_version"] = 1;
    j["width"] = spec.grid.width;
    j["height"] = spec.grid.height;
    j["slices"] = spec.slice_count;
    j["k"] = spec.k;
    j["te"] = spec.te;
    j["b_values"] = spec.b_values;
    j["noise_sigma"] = spec.noise_sigma;
    j["seed"] = spec.seed;
    json tissues = json::array();
    for (const Tissue& t : spec.tissues) tissues.push_back({{"name", t.name}, {"rho", t.rho}, {"t2", t.t2}, {"d", t.d}});
    j["tissues"] = tissues;
    json regions = json::array();
    for (const Region& r : spec.regions) regions.push_back(region_to_json(r));
    j["regions"] = regions;
    return j.dump(2) + "\n";
}

void save_phantom_spec(const PhantomSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("phantom: cannot write " + path);
    out << phantom_spec_to_json_text(spec);
}

}  // namespace dwmc
