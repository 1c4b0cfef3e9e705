#pragma once

#include <optional>
#include <span>

#include "mapdesign/geometry.hpp"
#include "mapdesign/mask.hpp"

namespace mapdesign {

enum class SightLineMode {
  EdgesAndCenter,  // x_min, x_center, x_max per element (and the same in y)
  EdgesOnly,
};

enum class BalanceWeight {
  Moment,  // clipped area x lever arm to the axis
  Area,
};

struct LayoutOptions {
  double alignment_tolerance = 0.01;
  SightLineMode sight_lines = SightLineMode::EdgesAndCenter;
  BalanceWeight balance_weight = BalanceWeight::Moment;

  /// Throws Error(InvalidThreshold).
  void validate() const;
};

struct HierarchyDetail {
  double d_horizontal = 0.0;  // [-1, 1]
  double d_vertical = 0.0;    // [-1, 1]
  double d_hier = 0.0;        // [0, 1]
};

struct AlignmentDetail {
  double r_horizontal = 0.0;
  double r_vertical = 0.0;
  int misaligned_h = 0;
  int total_h = 0;
  int misaligned_v = 0;
  int total_v = 0;
};

struct BalanceDetail {
  double b_horizontal = 0.0;  // (top - bottom) / (top + bottom)
  double b_vertical = 0.0;    // (left - right) / (left + right)
  double w_top = 0.0;
  double w_bottom = 0.0;
  double w_left = 0.0;
  double w_right = 0.0;
};

struct LayoutProfile {
  HierarchyDetail hierarchy;
  double r_map = 0.0;
  AlignmentDetail alignment;
  BalanceDetail balance;
  /// True when the main-map centroid and area came from a pixel mask.
  bool from_mask = false;

  double d_hier() const { return hierarchy.d_hier; }
};

/// Offsets are taken from the page center (0.5, 0.5) and scaled so page
/// edges map to +-1; the Euclidean norm is divided by sqrt(2).
HierarchyDetail hierarchy_deviation(Point2 main_centroid);

/// Throws Error(DegeneratePage) when a_page is 0 and
/// Error(InvalidArgument) when a_map is outside [0, a_page].
double compactness(double a_map, double a_page);

/// Horizontal sight lines are y positions, vertical sight lines are x
/// positions. Lines are chained into clusters along each axis while
/// consecutive gaps stay within the tolerance; a line counts as aligned when
/// its cluster also holds a line from a different element.
AlignmentDetail alignment(std::span<const MapElement> elements, const PageGeometry& page,
                          const LayoutOptions& options = {});

BalanceDetail visual_balance(std::span<const MapElement> elements, const PageGeometry& page,
                             BalanceWeight weight = BalanceWeight::Moment);

/// Requires exactly one MainMap element. When `refined_mask` is given the
/// main-map centroid and area come from its pixels, otherwise from the
/// MainMap box. Alignment and balance include every element.
LayoutProfile layout_profile(std::span<const MapElement> elements, const PageGeometry& page,
                             const BinaryMask* refined_mask, const LayoutOptions& options = {});

}  // namespace mapdesign
