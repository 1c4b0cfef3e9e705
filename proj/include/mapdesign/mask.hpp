#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mapdesign/geometry.hpp"

namespace mapdesign {

/// Row-major boolean grid. Stored as bytes (0/1) for cheap indexing.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int row, int col) const { return bits_[index(row, col)] != 0; }
  void set(int row, int col, bool value) { bits_[index(row, col)] = value ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class Connectivity { Four = 4, Eight = 8 };

struct ComponentLabeling {
  int width = 0;
  int height = 0;
  /// 0 = background; components numbered 1..K in order of their first pixel
  /// in a row-major scan.
  std::vector<int> labels;
  /// component_sizes[k - 1] is the pixel count of label k.
  std::vector<std::size_t> component_sizes;

  std::size_t component_count() const { return component_sizes.size(); }
  int label_at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
};

ComponentLabeling label_components(const BinaryMask& mask,
                                   Connectivity connectivity = Connectivity::Eight);

/// Keeps only the largest 8-connected component; equal sizes resolve to the
/// component reached first in row-major order. Throws Error(EmptyMask).
BinaryMask refine_main_mask(const BinaryMask& mask);

std::size_t mask_area(const BinaryMask& mask);

/// Mean of foreground pixel centers, ((col + 0.5) / W, (row + 0.5) / H).
/// Throws Error(EmptyMask).
Point2 mask_centroid(const BinaryMask& mask);

/// Normalized bounding box of the foreground (pixel edges, not centers).
/// Throws Error(EmptyMask).
AxisAlignedBox mask_bounds(const BinaryMask& mask);

/// Pixels whose centers fall inside the rotated box.
BinaryMask rasterize_box(const OrientedBox& box, const PageGeometry& page);

/// Removes foreground pixels within `radius` (Chebyshev) of background or
/// the raster border. radius 0 returns the input unchanged.
BinaryMask erode(const BinaryMask& mask, int radius);

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);

}  // namespace mapdesign
