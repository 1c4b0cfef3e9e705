#include "mapdesign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mapdesign/error.hpp"

namespace mapdesign {

PageGeometry::PageGeometry(int width, int height) : width_px(width), height_px(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "page dimensions must be positive");
  }
}

namespace {
constexpr std::array<std::string_view, kElementKindCount> kKindNames = {
    "MainMap", "Title",           "Legend",     "ScaleBar", "InsetMap",
    "Chart",   "DescriptiveText", "NorthArrow", "Picture",  "Table",
};
}  // namespace

std::string_view element_kind_name(ElementKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<ElementKind> parse_element_kind(std::string_view label) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == label) return static_cast<ElementKind>(i);
  }
  return std::nullopt;
}

double normalize_theta(double theta_deg) {
  double t = std::fmod(theta_deg + 90.0, 180.0);
  if (t < 0.0) t += 180.0;
  // fmod can return exactly 180 after the shift for tiny negative inputs.
  if (t >= 180.0) t -= 180.0;
  return t - 90.0;
}

OrientedBox::OrientedBox(double cx, double cy, double w, double h, double theta_deg)
    : cx_(cx), cy_(cy), w_(w), h_(h), theta_(0.0) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(cx) || !finite(cy) || !finite(w) || !finite(h) || !finite(theta_deg)) {
    throw Error(ErrorCode::InvalidArgument, "box fields must be finite");
  }
  if (cx < 0.0 || cx > 1.0 || cy < 0.0 || cy > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "box center must lie in [0,1]");
  }
  if (!(w > 0.0 && w <= 1.0) || !(h > 0.0 && h <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "box extents must lie in (0,1]");
  }
  theta_ = normalize_theta(theta_deg);
}

std::array<Point2, 4> OrientedBox::corners(const PageGeometry& page) const {
  const double rad = theta_ * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double W = page.width_px;
  const double H = page.height_px;
  const double hw = w_ * W / 2.0;
  const double hh = h_ * H / 2.0;
  const std::array<Point2, 4> local = {{{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}};
  std::array<Point2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double dx = c * local[i].x - s * local[i].y;
    const double dy = s * local[i].x + c * local[i].y;
    out[i] = {cx_ + dx / W, cy_ + dy / H};
  }
  return out;
}

bool OrientedBox::overshoots_page(const PageGeometry& page) const {
  for (const auto& p : corners(page)) {
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) return true;
  }
  return false;
}

void OrientedBox::check_page_bounds(const PageGeometry& page) const {
  constexpr double lo = -kPageSlack;
  constexpr double hi = 1.0 + kPageSlack;
  for (const auto& p : corners(page)) {
    if (p.x < lo || p.x > hi || p.y < lo || p.y > hi) {
      throw Error(ErrorCode::InvalidArgument, "box corner outside page slack band");
    }
  }
}

AxisAlignedBox envelope(const OrientedBox& box, const PageGeometry& page) {
  if (box.theta() == 0.0) {
    // Exact path for the common unrotated case.
    return {std::clamp(box.cx() - box.w() / 2.0, 0.0, 1.0),
            std::clamp(box.cy() - box.h() / 2.0, 0.0, 1.0),
            std::clamp(box.cx() + box.w() / 2.0, 0.0, 1.0),
            std::clamp(box.cy() + box.h() / 2.0, 0.0, 1.0)};
  }
  const auto pts = box.corners(page);
  AxisAlignedBox env{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    env.x_min = std::min(env.x_min, p.x);
    env.y_min = std::min(env.y_min, p.y);
    env.x_max = std::max(env.x_max, p.x);
    env.y_max = std::max(env.y_max, p.y);
  }
  env.x_min = std::clamp(env.x_min, 0.0, 1.0);
  env.y_min = std::clamp(env.y_min, 0.0, 1.0);
  env.x_max = std::clamp(env.x_max, 0.0, 1.0);
  env.y_max = std::clamp(env.y_max, 0.0, 1.0);
  return env;
}

Point2 obb_centroid(const OrientedBox& box) { return {box.cx(), box.cy()}; }

double obb_area(const OrientedBox& box) { return box.w() * box.h(); }

}  // namespace mapdesign
