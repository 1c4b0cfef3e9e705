#include "mapdesign/color.hpp"

#include <algorithm>
#include <cmath>

#include "mapdesign/error.hpp"

namespace mapdesign {

namespace {
constexpr std::array<std::string_view, kHueCategoryCount> kHueNames = {
    "Black", "Gray", "White", "Red", "Orange", "Yellow", "Green", "Cyan", "Blue", "Purple",
};
}  // namespace

std::string_view hue_category_name(HueCategory category) {
  return kHueNames[static_cast<std::size_t>(category)];
}

bool is_achromatic(HueCategory category) {
  return category == HueCategory::Black || category == HueCategory::Gray ||
         category == HueCategory::White;
}

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int delta = mx - mn;
  Hsv out;
  out.v = mx / 255.0;
  if (mx == 0 || delta == 0) return out;
  out.s = static_cast<double>(delta) / mx;
  // Hue is 60 * num / delta with an integer num in [0, 6 * delta).
  int num;
  if (mx == r) {
    num = g - b;
    if (num < 0) num += 6 * delta;
  } else if (mx == g) {
    num = 2 * delta + (b - r);
  } else {
    num = 4 * delta + (r - g);
  }
  const double h = 60.0 * num / delta;
  out.h = h;
  return out;
}

void HueThresholds::validate() const {
  auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!unit(black_max_value) || !unit(achromatic_max_saturation) || !unit(white_min_value)) {
    throw Error(ErrorCode::InvalidThreshold, "achromatic thresholds must lie in [0,1]");
  }
  if (white_min_value < black_max_value) {
    throw Error(ErrorCode::InvalidThreshold, "white threshold must not be below black threshold");
  }
  for (std::size_t i = 0; i < chromatic_starts.size(); ++i) {
    const double a = chromatic_starts[i];
    if (!std::isfinite(a) || a < 0.0 || a >= 360.0) {
      throw Error(ErrorCode::InvalidThreshold, "hue bin starts must lie in [0,360)");
    }
    if (i > 0 && !(a > chromatic_starts[i - 1])) {
      throw Error(ErrorCode::InvalidThreshold, "hue bin starts must be strictly increasing");
    }
  }
}

HueCategory classify_hue(const Hsv& hsv, const HueThresholds& t) {
  if (hsv.v < t.black_max_value) return HueCategory::Black;
  if (hsv.s < t.achromatic_max_saturation) {
    return hsv.v >= t.white_min_value ? HueCategory::White : HueCategory::Gray;
  }
  const auto& b = t.chromatic_starts;
  if (hsv.h < b[0] || hsv.h >= b[6]) return HueCategory::Red;
  if (hsv.h < b[1]) return HueCategory::Orange;
  if (hsv.h < b[2]) return HueCategory::Yellow;
  if (hsv.h < b[3]) return HueCategory::Green;
  if (hsv.h < b[4]) return HueCategory::Cyan;
  if (hsv.h < b[5]) return HueCategory::Blue;
  return HueCategory::Purple;
}

HueHistogram HueHistogram::from_counts(const std::array<std::size_t, kHueCategoryCount>& counts) {
  HueHistogram h;
  h.counts = counts;
  for (auto c : counts) h.pixel_count += c;
  if (h.pixel_count > 0) {
    const double n = static_cast<double>(h.pixel_count);
    for (std::size_t i = 0; i < kHueCategoryCount; ++i) h.proportions[i] = counts[i] / n;
  }
  return h;
}

HueHistogram HueHistogram::merged(const HueHistogram& other) const {
  auto sum = counts;
  for (std::size_t i = 0; i < kHueCategoryCount; ++i) sum[i] += other.counts[i];
  return from_counts(sum);
}

void ColorOptions::validate() const {
  thresholds.validate();
  if (!std::isfinite(min_hue_share) || min_hue_share <= 0.0 || min_hue_share > 1.0) {
    throw Error(ErrorCode::InvalidThreshold, "min hue share must lie in (0,1]");
  }
  if (erosion_radius < 0) throw Error(ErrorCode::InvalidThreshold, "erosion radius must be >= 0");
}

HueComplexity hue_complexity(const HueHistogram& histogram, double min_share) {
  HueComplexity out;
  std::size_t kept_total = 0;
  std::array<std::size_t, kHueCategoryCount> kept{};
  std::size_t kept_n = 0;
  for (std::size_t i = 0; i < kHueCategoryCount; ++i) {
    if (histogram.pixel_count > 0 && histogram.proportions[i] >= min_share) {
      kept[kept_n++] = histogram.counts[i];
      kept_total += histogram.counts[i];
    }
  }
  out.n_hue = static_cast<int>(kept_n);
  if (kept_n <= 1) return out;

  const double bound = std::log2(static_cast<double>(kept_n));
  const bool uniform =
      std::all_of(kept.begin(), kept.begin() + kept_n, [&](std::size_t c) { return c == kept[0]; });
  if (uniform) {
    out.e_hue = bound;
    return out;
  }
  double e = 0.0;
  const double total = static_cast<double>(kept_total);
  for (std::size_t i = 0; i < kept_n; ++i) {
    const double p = kept[i] / total;
    e -= p * std::log2(p);
  }
  // Rounding can push a near-uniform entropy a few ulps past log2(n).
  out.e_hue = std::clamp(e, 0.0, bound);
  return out;
}

BinaryMask color_sampling_mask(const RgbImage& image, const BinaryMask& mask, int erosion_radius) {
  if (image.width != mask.width() || image.height != mask.height()) {
    throw Error(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
  BinaryMask m = erode(mask, erosion_radius);
  if (image.alpha) m = mask_and(m, alpha_mask(image));
  return m;
}

HueHistogram hue_histogram(const RgbImage& image, const BinaryMask& mask,
                           const HueThresholds& thresholds) {
  if (image.width != mask.width() || image.height != mask.height()) {
    throw Error(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
  std::array<std::size_t, kHueCategoryCount> counts{};
  const auto bits = mask.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const std::uint8_t* px = image.pixel(i);
    ++counts[static_cast<std::size_t>(classify_hue(rgb_to_hsv(px[0], px[1], px[2]), thresholds))];
  }
  auto hist = HueHistogram::from_counts(counts);
  if (hist.pixel_count == 0) throw Error(ErrorCode::EmptyMask, "no pixels to sample");
  return hist;
}

ColorProfile color_profile(const RgbImage& image, const BinaryMask& mask,
                           const ColorOptions& options) {
  const BinaryMask sample = color_sampling_mask(image, mask, options.erosion_radius);
  const auto bits = sample.bits();

  std::array<std::size_t, kHueCategoryCount> counts{};
  double sum_s = 0.0;
  double sum_v = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const std::uint8_t* px = image.pixel(i);
    const Hsv hsv = rgb_to_hsv(px[0], px[1], px[2]);
    ++counts[static_cast<std::size_t>(classify_hue(hsv, options.thresholds))];
    sum_s += hsv.s;
    sum_v += hsv.v;
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::EmptyMask, "no pixels to sample");

  ColorProfile out;
  const double dn = static_cast<double>(n);
  out.s_ave = sum_s / dn;
  out.b_ave = sum_v / dn;

  double sum_sq = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const std::uint8_t* px = image.pixel(i);
    const double d = std::max({px[0], px[1], px[2]}) / 255.0 - out.b_ave;
    sum_sq += d * d;
  }
  out.b_con = std::sqrt(sum_sq / dn);

  out.histogram = HueHistogram::from_counts(counts);
  // First maximum in category order wins ties.
  out.h_main = static_cast<HueCategory>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  const auto complexity = hue_complexity(out.histogram, options.min_hue_share);
  out.n_hue = complexity.n_hue;
  out.e_hue = complexity.e_hue;
  return out;
}

}  // namespace mapdesign
