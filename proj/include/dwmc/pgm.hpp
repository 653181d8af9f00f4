#pragma once

#include <string>

#include "dwmc/image.hpp"
#include "dwmc/morphology_types.hpp"

namespace dwmc {

// Binary PGM (P5) I/O. Bands are stored quantized: value v encodes as
// round-half-up(v * maxval) with maxval 255 or 65535 (16-bit samples are
// big-endian). Label maps store raw class indices at maxval 255; binary
// images store 0/255.

Band read_band(const std::string& path);
void write_band(const Band& band, const std::string& path, int bit_depth = 8);

LabelMap read_label_map(const std::string& path, int class_count = 0);  // 0: infer max+1
void write_label_map(const LabelMap& map, const std::string& path);

BinaryImage read_binary_image(const std::string& path);
void write_binary_image(const BinaryImage& img, const std::string& path);

}  // namespace dwmc
