#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwmc/image.hpp"

namespace dwmc {

struct Tissue {
    std::string name;
    double rho = 0.0;  // nuclear spin density, [0,1]
    double t2 = 1.0;   // transversal relaxation, ms
    double d = 0.0;    // diffusion coefficient, mm^2/s
};

// Filled geometry primitive painted onto the grid. Later regions in the
// list override earlier ones; pixels covered by no region get tissue 0.
struct Region {
    enum class Shape { Ellipse, Rect };
    Shape shape = Shape::Ellipse;
    int tissue = 0;
    // Ellipse: center (cx,cy), semi-axes (rx,ry); inside iff
    // ((x-cx)/rx)^2 + ((y-cy)/ry)^2 <= 1.
    double cx = 0, cy = 0, rx = 0, ry = 0;
    // Rect: inclusive pixel bounds [x0,x1] x [y0,y1].
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    // Inclusive slice range.
    int z0 = 0, z1 = 0;

    bool contains(int x, int y) const;
};

struct PhantomSpec {
    Grid grid;
    int slice_count = 1;
    std::vector<Tissue> tissues;
    std::vector<Region> regions;
    double k = 1.0;    // proportionality constant, [0,1]
    double te = 0.0;   // echo time, ms
    std::vector<double> b_values;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct PhantomResult {
    Volume volume;                // noiseless if noise_sigma == 0
    std::vector<LabelMap> truth;  // per-slice tissue ids
};

// Noiseless voxel value of tissue tau in band i:
//   K * rho_tau * exp(-TE/T2_tau) * exp(-b_i * D_tau), clamped to [0,1];
// noise_sigma > 0 then adds clamped Gaussian noise (one stream for the
// whole volume, derived from spec.seed).
PhantomResult synthesize_phantom(const PhantomSpec& spec);

// Nested-ellipse head: non-brain background (tissue 0, rho = 0, low D,
// also painted as the skull ring), CSF ventricles, gray-matter rim,
// white-matter core. D strictly ordered WM < GM < CSF. All four classes
// are present on every slice; structures taper toward the end slices.
PhantomSpec default_brain_phantom(int size, int slices);

// JSON (de)serialization; schema documented in docs/formats.md.
PhantomSpec phantom_spec_from_json_text(const std::string& text);
PhantomSpec load_phantom_spec(const std::string& path);
std::string phantom_spec_to_json_text(const PhantomSpec& spec);
void save_phantom_spec(const PhantomSpec& spec, const std::string& path);

}  // namespace dwmc
