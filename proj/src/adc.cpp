#include "dwmc/adc.hpp"

#include <cmath>

#include "dwmc/errors.hpp"
#include "dwmc/rng.hpp"

namespace dwmc {

void AdcConfig::validate() const {
    if (!(c > 0.0)) throw ConfigError("adc: C must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("adc: epsilon must lie in (0,1)");
    if (!(output_scale > 0.0)) throw ConfigError("adc: output_scale must be positive");
}

std::vector<double> compute_adc_raw(const MultispectralImage& image, const AdcConfig& cfg) {
    cfg.validate();
    if (image.band_count() < 2) throw ConfigError("adc: needs at least two bands");
    if (image.b_values()[0] != 0.0) throw ConfigError("adc: first band must be the b = 0 reference");
    for (int i = 1; i < image.band_count(); ++i)
        if (!(image.b_values()[i] > 0.0)) throw ConfigError("adc: b_values after the reference must be positive");

    const std::size_t n = image.grid().size();
    std::vector<double> raw(n, 0.0);
    for (int i = 1; i < image.band_count(); ++i) {
        const double scale = cfg.c / image.b_values()[i];
        const std::vector<double>& ref = image.band(0).values();
        const std::vector<double>& fi = image.band(i).values();
        for (std::size_t p = 0; p < n; ++p) {
            const double a = std::max(ref[p], cfg.epsilon);
            const double b = std::max(fi[p], cfg.epsilon);
            raw[p] += scale * std::log(a / b);
        }
    }
    return raw;
}

Band compute_adc(const MultispectralImage& image, const AdcConfig& cfg) {
    std::vector<double> raw = compute_adc_raw(image, cfg);
    for (double& v : raw) v = clamp01(v / cfg.output_scale);
    return Band(image.grid(), std::move(raw));
}

AdcArtifactDemo adc_artifact_demo(const PhantomSpec& spec, double sigma, std::uint64_t seed,
                                  const AdcConfig& cfg) {
    PhantomSpec clean = spec;
    clean.noise_sigma = 0.0;
    PhantomResult phantom = synthesize_phantom(clean);
    const MultispectralImage& mid = phantom.volume.slice(phantom.volume.slice_count() / 2);
    return AdcArtifactDemo{compute_adc(mid, cfg), compute_adc(add_noise(mid, sigma, seed), cfg)};
}

}  // namespace dwmc
