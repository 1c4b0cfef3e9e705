#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mapdesign {

/// Page size in pixels. Element coordinates are normalized against it.
struct PageGeometry {
  int width_px = 1;
  int height_px = 1;

  PageGeometry() = default;
  PageGeometry(int width, int height);

  double aspect() const { return static_cast<double>(width_px) / height_px; }
  double area_px() const { return static_cast<double>(width_px) * height_px; }
};

/// The closed element taxonomy. Declaration order is the canonical order
/// used for itemset sorting and column layout.
enum class ElementKind : std::uint8_t {
  MainMap,
  Title,
  Legend,
  ScaleBar,
  InsetMap,
  Chart,
  DescriptiveText,
  NorthArrow,
  Picture,
  Table,
};

inline constexpr std::size_t kElementKindCount = 10;

inline constexpr std::array<ElementKind, kElementKindCount> kAllElementKinds = {
    ElementKind::MainMap,  ElementKind::Title,           ElementKind::Legend,
    ElementKind::ScaleBar, ElementKind::InsetMap,        ElementKind::Chart,
    ElementKind::DescriptiveText, ElementKind::NorthArrow, ElementKind::Picture,
    ElementKind::Table,
};

std::string_view element_kind_name(ElementKind kind);
std::optional<ElementKind> parse_element_kind(std::string_view label);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct AxisAlignedBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  Point2 center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }
  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

/// Rotated rectangle in normalized page coordinates. Rotation is applied in
/// pixel space (so aspect ratio matters), counter-clockwise in image axes
/// for positive theta, about the center.
class OrientedBox {
 public:
  static constexpr double kPageSlack = 0.05;

  /// Validates ranges and normalizes theta into [-90, 90). Throws
  /// Error(InvalidArgument) when a field is out of range.
  OrientedBox(double cx, double cy, double w, double h, double theta_deg);

  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double w() const { return w_; }
  double h() const { return h_; }
  double theta() const { return theta_; }

  /// Rotated corners in normalized page coordinates.
  std::array<Point2, 4> corners(const PageGeometry& page) const;

  /// True when any corner leaves [0,1]. Corners beyond the slack band are
  /// rejected by check_page_bounds.
  bool overshoots_page(const PageGeometry& page) const;

  /// Throws Error(InvalidArgument) when a corner falls outside
  /// [-slack, 1 + slack].
  void check_page_bounds(const PageGeometry& page) const;

 private:
  double cx_, cy_, w_, h_, theta_;
};

double normalize_theta(double theta_deg);

struct MapElement {
  ElementKind kind;
  OrientedBox box;
};

AxisAlignedBox envelope(const OrientedBox& box, const PageGeometry& page);
Point2 obb_centroid(const OrientedBox& box);
double obb_area(const OrientedBox& box);

}  // namespace mapdesign
