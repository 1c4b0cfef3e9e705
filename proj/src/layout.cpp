#include "mapdesign/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mapdesign/error.hpp"

namespace mapdesign {

void LayoutOptions::validate() const {
  if (!std::isfinite(alignment_tolerance) || alignment_tolerance <= 0.0) {
    throw Error(ErrorCode::InvalidThreshold, "alignment tolerance must be > 0");
  }
}

HierarchyDetail hierarchy_deviation(Point2 main_centroid) {
  HierarchyDetail out;
  out.d_horizontal = (main_centroid.x - 0.5) / 0.5;
  out.d_vertical = (main_centroid.y - 0.5) / 0.5;
  const double d = std::hypot(out.d_horizontal, out.d_vertical);
  out.d_hier = std::clamp(d / std::numbers::sqrt2, 0.0, 1.0);
  return out;
}

double compactness(double a_map, double a_page) {
  if (!(a_page > 0.0)) throw Error(ErrorCode::DegeneratePage, "page area must be positive");
  if (!(a_map >= 0.0) || a_map > a_page) {
    throw Error(ErrorCode::InvalidArgument, "main-map area must lie in [0, page area]");
  }
  return a_map / a_page;
}

namespace {

struct SightLine {
  double pos;
  std::size_t element;
};

// Returns the number of misaligned lines.
int count_misaligned(std::vector<SightLine>& lines, double tolerance) {
  std::sort(lines.begin(), lines.end(), [](const SightLine& a, const SightLine& b) {
    return a.pos < b.pos || (a.pos == b.pos && a.element < b.element);
  });
  int misaligned = 0;
  std::size_t start = 0;
  while (start < lines.size()) {
    std::size_t end = start + 1;
    while (end < lines.size() && lines[end].pos - lines[end - 1].pos <= tolerance) ++end;
    const bool shared = std::any_of(lines.begin() + static_cast<std::ptrdiff_t>(start),
                                    lines.begin() + static_cast<std::ptrdiff_t>(end),
                                    [&](const SightLine& l) { return l.element != lines[start].element; });
    if (!shared) misaligned += static_cast<int>(end - start);
    start = end;
  }
  return misaligned;
}

}  // namespace

AlignmentDetail alignment(std::span<const MapElement> elements, const PageGeometry& page,
                          const LayoutOptions& options) {
  options.validate();
  std::vector<SightLine> xs;
  std::vector<SightLine> ys;
  const bool centers = options.sight_lines == SightLineMode::EdgesAndCenter;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto env = envelope(elements[i].box, page);
    const auto c = env.center();
    xs.push_back({env.x_min, i});
    xs.push_back({env.x_max, i});
    ys.push_back({env.y_min, i});
    ys.push_back({env.y_max, i});
    if (centers) {
      xs.push_back({c.x, i});
      ys.push_back({c.y, i});
    }
  }
  AlignmentDetail out;
  out.total_v = static_cast<int>(xs.size());
  out.total_h = static_cast<int>(ys.size());
  if (elements.size() < 2) return out;
  out.misaligned_v = count_misaligned(xs, options.alignment_tolerance);
  out.misaligned_h = count_misaligned(ys, options.alignment_tolerance);
  out.r_vertical = out.total_v > 0 ? static_cast<double>(out.misaligned_v) / out.total_v : 0.0;
  out.r_horizontal = out.total_h > 0 ? static_cast<double>(out.misaligned_h) / out.total_h : 0.0;
  return out;
}

namespace {

// Weight of the part of [lo, hi] (extent `span` on the other axis) lying on
// each side of 0.5. `first` collects the side below 0.5 (top or left).
void accumulate_side_weights(double lo, double hi, double span, BalanceWeight mode,
                             double& first, double& second) {
  constexpr double axis = 0.5;
  if (lo < axis) {
    const double top = std::min(hi, axis);
    const double area = span * (top - lo);
    const double arm = axis - (lo + top) / 2.0;
    first += mode == BalanceWeight::Moment ? area * arm : area;
  }
  if (hi > axis) {
    const double bottom = std::max(lo, axis);
    const double area = span * (hi - bottom);
    const double arm = (bottom + hi) / 2.0 - axis;
    second += mode == BalanceWeight::Moment ? area * arm : area;
  }
}

double normalized_difference(double a, double b) {
  const double total = a + b;
  return total > 0.0 ? (a - b) / total : 0.0;
}

}  // namespace

BalanceDetail visual_balance(std::span<const MapElement> elements, const PageGeometry& page,
                             BalanceWeight weight) {
  BalanceDetail out;
  for (const auto& e : elements) {
    const auto env = envelope(e.box, page);
    accumulate_side_weights(env.y_min, env.y_max, env.width(), weight, out.w_top, out.w_bottom);
    accumulate_side_weights(env.x_min, env.x_max, env.height(), weight, out.w_left, out.w_right);
  }
  out.b_horizontal = normalized_difference(out.w_top, out.w_bottom);
  out.b_vertical = normalized_difference(out.w_left, out.w_right);
  return out;
}

LayoutProfile layout_profile(std::span<const MapElement> elements, const PageGeometry& page,
                             const BinaryMask* refined_mask, const LayoutOptions& options) {
  const MapElement* main = nullptr;
  for (const auto& e : elements) {
    if (e.kind != ElementKind::MainMap) continue;
    if (main != nullptr) throw Error(ErrorCode::InvalidArgument, "multiple main maps");
    main = &e;
  }
  if (main == nullptr) throw Error(ErrorCode::InvalidArgument, "no main map element");

  LayoutProfile out;
  if (refined_mask != nullptr) {
    if (refined_mask->width() != page.width_px || refined_mask->height() != page.height_px) {
      throw Error(ErrorCode::DimensionMismatch, "mask does not match page geometry");
    }
    out.hierarchy = hierarchy_deviation(mask_centroid(*refined_mask));
    out.r_map = compactness(static_cast<double>(mask_area(*refined_mask)), page.area_px());
    out.from_mask = true;
  } else {
    out.hierarchy = hierarchy_deviation(obb_centroid(main->box));
    out.r_map = compactness(std::min(obb_area(main->box), 1.0), 1.0);
  }
  out.alignment = alignment(elements, page, options);
  out.balance = visual_balance(elements, page, options.balance_weight);
  return out;
}

}  // namespace mapdesign
