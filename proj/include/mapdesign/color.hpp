#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mapdesign/image_io.hpp"
#include "mapdesign/mask.hpp"

namespace mapdesign {

enum class HueCategory : std::uint8_t {
  Black,
  Gray,
  White,
  Red,
  Orange,
  Yellow,
  Green,
  Cyan,
  Blue,
  Purple,
};

inline constexpr std::size_t kHueCategoryCount = 10;

std::string_view hue_category_name(HueCategory category);
bool is_achromatic(HueCategory category);

struct Hsv {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;  // [0, 1]
  double v = 0.0;  // [0, 1]
};

/// Hexcone conversion. Hue is 0 for achromatic input.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Classification thresholds. Achromatic tests run first; the remaining
/// pixels are binned by hue. `chromatic_starts` holds the start angle of
/// Orange, Yellow, Green, Cyan, Blue, Purple and finally the start of Red
/// (which wraps through 360).
struct HueThresholds {
  double black_max_value = 0.15;
  double achromatic_max_saturation = 0.10;
  double white_min_value = 0.85;
  std::array<double, 7> chromatic_starts = {15.0, 45.0, 70.0, 165.0, 200.0, 255.0, 345.0};

  /// Throws Error(InvalidThreshold) on out-of-range or unordered values.
  void validate() const;
};

HueCategory classify_hue(const Hsv& hsv, const HueThresholds& thresholds = {});

struct HueHistogram {
  std::array<std::size_t, kHueCategoryCount> counts{};
  std::array<double, kHueCategoryCount> proportions{};
  std::size_t pixel_count = 0;

  double proportion(HueCategory c) const { return proportions[static_cast<std::size_t>(c)]; }

  /// Builds proportions from counts.
  static HueHistogram from_counts(const std::array<std::size_t, kHueCategoryCount>& counts);
  /// Exact merge of partial histograms (counts add).
  HueHistogram merged(const HueHistogram& other) const;
};

struct ColorOptions {
  HueThresholds thresholds;
  /// Categories below this share are treated as noise for N_hue / E_hue.
  double min_hue_share = 0.05;
  /// Optional boundary erosion applied to the mask before sampling.
  int erosion_radius = 0;

  void validate() const;
};

struct HueComplexity {
  int n_hue = 0;
  double e_hue = 0.0;
};

/// Number of categories at or above `min_share`, and the base-2 entropy of
/// those categories after renormalizing them to sum to one.
HueComplexity hue_complexity(const HueHistogram& histogram, double min_share = 0.05);

struct ColorProfile {
  HueCategory h_main = HueCategory::Black;
  double s_ave = 0.0;
  double b_ave = 0.0;
  double b_con = 0.0;
  int n_hue = 0;
  double e_hue = 0.0;
  HueHistogram histogram;
};

/// Sampling mask actually used for an image: mask, eroded, intersected
/// with the image's alpha plane. Throws Error(DimensionMismatch).
BinaryMask color_sampling_mask(const RgbImage& image, const BinaryMask& mask, int erosion_radius);

/// Throws Error(DimensionMismatch) or Error(EmptyMask).
HueHistogram hue_histogram(const RgbImage& image, const BinaryMask& mask,
                           const HueThresholds& thresholds = {});

/// Throws Error(DimensionMismatch) or Error(EmptyMask).
ColorProfile color_profile(const RgbImage& image, const BinaryMask& mask,
                           const ColorOptions& options = {});

}  // namespace mapdesign
