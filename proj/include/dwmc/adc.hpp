#pragma once

#include <cstdint>

#include "dwmc/image.hpp"
#include "dwmc/phantom.hpp"

namespace dwmc {

struct AdcConfig {
    double c = 1.0;                  // proportionality constant
    double epsilon = 1.0 / 65535.0;  // clamp floor applied before the logarithms
    // Raw ADC divided by this before storage; 0.008 = 2 * C * D_csf so a
    // CSF-like voxel lands near 0.75 of the output range.
    double output_scale = 0.008;

    void validate() const;
};

// raw(u) = sum_{i>=1} (C / b_i) * ln(max(f_0(u),eps) / max(f_i(u),eps)),
// band 0 being the b = 0 reference; stored value is
// clamp(raw / output_scale, 0, 1). Note the n-band sum adds n-1
// independent estimates of D, so an ideal 3-band image yields raw = 2CD.
Band compute_adc(const MultispectralImage& image, const AdcConfig& cfg = {});

// Raw (unscaled, unclamped) ADC values, row-major; used where the sign
// and magnitude matter.
std::vector<double> compute_adc_raw(const MultispectralImage& image, const AdcConfig& cfg = {});

struct AdcArtifactDemo {
    Band adc_noiseless;
    Band adc_noisy;
};

// ADC of the middle slice of the phantom before and after additive noise.
// With noise, background voxels (no sample present) pick up spurious
// nonzero ADC values from the log of noise ratios.
AdcArtifactDemo adc_artifact_demo(const PhantomSpec& spec, double sigma, std::uint64_t seed,
                                  const AdcConfig& cfg = {});

}  // namespace dwmc
