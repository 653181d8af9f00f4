#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwmc/image.hpp"

namespace dwmc {

// Volume-on-disk layout: a directory of PGM files named
// slice{s:02}_band{i}.pgm (s, i zero-based) plus manifest.json with the
// dimensions and b_values. Ground-truth label maps, when present, are
// slice{s:02}_truth.pgm.

struct VolumeOnDisk {
    Volume volume;
    std::vector<LabelMap> truth;  // empty when the directory has no truth maps
};

void write_volume(const Volume& volume, const std::string& dir, int bit_depth = 16);
void write_truth(const std::vector<LabelMap>& truth, const std::string& dir);

VolumeOnDisk read_volume(const std::string& dir);

std::string slice_band_name(int s, int i);
std::string slice_truth_name(int s);

// write-then-rename so readers never observe partial files
void atomic_write_text(const std::string& path, const std::string& text);

}  // namespace dwmc
