#pragma once

#include <cstdint>
#include <vector>

#include "dwmc/image.hpp"

namespace dwmc {

class BinaryImage {
  public:
    BinaryImage() = default;
    BinaryImage(Grid grid, std::vector<std::uint8_t> bits);
    static BinaryImage zeros(Grid grid) { return BinaryImage(grid, std::vector<std::uint8_t>(grid.size(), 0)); }

    const Grid& grid() const { return grid_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::uint8_t at(int x, int y) const { return bits_[static_cast<std::size_t>(y) * grid_.width + x]; }
    void set(int x, int y, bool v) { bits_[static_cast<std::size_t>(y) * grid_.width + x] = v ? 1 : 0; }

    std::uint64_t count_ones() const;
    bool operator==(const BinaryImage&) const = default;

  private:
    Grid grid_;
    std::vector<std::uint8_t> bits_;
};

}  // namespace dwmc
