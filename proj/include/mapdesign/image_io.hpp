#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "mapdesign/mask.hpp"

namespace mapdesign {

/// Interleaved 8-bit RGB raster with an optional alpha plane.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 * width * height
  std::optional<std::vector<std::uint8_t>> alpha;

  RgbImage() = default;
  RgbImage(int w, int h);

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  void set(int row, int col, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  const std::uint8_t* pixel(std::size_t i) const { return rgb.data() + 3 * i; }
};

/// Decodes PNG/JPEG. Throws Error(FileNotFound) or Error(ImageDecodeError).
RgbImage read_image(const std::filesystem::path& path);

/// Reads an 8-bit single-channel mask (nonzero = foreground).
BinaryMask read_mask(const std::filesystem::path& path);

/// PNG writers used by fixture generation and tests.
void write_image_png(const std::filesystem::path& path, const RgbImage& image);
void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask);

/// Foreground where alpha > 0; an all-true mask when the image has no alpha.
BinaryMask alpha_mask(const RgbImage& image);

}  // namespace mapdesign
