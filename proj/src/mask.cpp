#include "mapdesign/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mapdesign/error.hpp"

namespace mapdesign {

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "mask bit count does not match dimensions");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // The smaller provisional label becomes the root.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

ComponentLabeling label_components(const BinaryMask& mask, Connectivity connectivity) {
  const int W = mask.width();
  const int H = mask.height();
  ComponentLabeling out;
  out.width = W;
  out.height = H;
  out.labels.assign(mask.size(), 0);

  // First pass: provisional labels, 1-based; slot 0 of the set is unused.
  DisjointSet sets;
  sets.make();
  auto idx = [W](int r, int c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(W) + static_cast<std::size_t>(c);
  };
  const bool eight = connectivity == Connectivity::Eight;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      if (!mask.at(r, c)) continue;
      int label = 0;
      auto visit = [&](int rr, int cc) {
        if (rr < 0 || cc < 0 || cc >= W) return;
        const int n = out.labels[idx(rr, cc)];
        if (n == 0) return;
        if (label == 0) {
          label = n;
        } else {
          sets.unite(label, n);
        }
      };
      visit(r, c - 1);
      visit(r - 1, c);
      if (eight) {
        visit(r - 1, c - 1);
        visit(r - 1, c + 1);
      }
      out.labels[idx(r, c)] = label != 0 ? label : sets.make();
    }
  }

  // Second pass: dense labels in order of first appearance.
  std::vector<int> dense;
  for (auto& l : out.labels) {
    if (l == 0) continue;
    const int root = sets.find(l);
    if (static_cast<std::size_t>(root) >= dense.size()) dense.resize(root + 1, 0);
    if (dense[root] == 0) {
      out.component_sizes.push_back(0);
      dense[root] = static_cast<int>(out.component_sizes.size());
    }
    l = dense[root];
    ++out.component_sizes[l - 1];
  }
  return out;
}

BinaryMask refine_main_mask(const BinaryMask& mask) {
  const auto labeling = label_components(mask, Connectivity::Eight);
  if (labeling.component_count() == 0) {
    throw Error(ErrorCode::EmptyMask, "mask has no foreground pixels");
  }
  const auto& sizes = labeling.component_sizes;
  // max_element returns the first maximum, i.e. the smallest label.
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()) + 1;
  std::vector<std::uint8_t> bits(mask.size());
  std::transform(labeling.labels.begin(), labeling.labels.end(), bits.begin(),
                 [keep](int l) { return static_cast<std::uint8_t>(l == keep); });
  return BinaryMask(mask.width(), mask.height(), std::move(bits));
}

std::size_t mask_area(const BinaryMask& mask) {
  const auto bits = mask.bits();
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

Point2 mask_centroid(const BinaryMask& mask) {
  double sum_c = 0.0;
  double sum_r = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      sum_c += c + 0.5;
      sum_r += r + 0.5;
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyMask, "centroid of an empty mask");
  const double dn = static_cast<double>(n);
  return {sum_c / dn / mask.width(), sum_r / dn / mask.height()};
}

AxisAlignedBox mask_bounds(const BinaryMask& mask) {
  int r0 = mask.height(), r1 = -1, c0 = mask.width(), c1 = -1;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      r0 = std::min(r0, r);
      r1 = std::max(r1, r);
      c0 = std::min(c0, c);
      c1 = std::max(c1, c);
    }
  }
  if (r1 < 0) throw Error(ErrorCode::EmptyMask, "bounds of an empty mask");
  const double W = mask.width();
  const double H = mask.height();
  return {c0 / W, r0 / H, (c1 + 1) / W, (r1 + 1) / H};
}

BinaryMask rasterize_box(const OrientedBox& box, const PageGeometry& page) {
  BinaryMask out(page.width_px, page.height_px);
  const double W = page.width_px;
  const double H = page.height_px;
  const double rad = box.theta() * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = box.cx() * W;
  const double cy = box.cy() * H;
  const double hw = box.w() * W / 2.0;
  const double hh = box.h() * H / 2.0;
  const auto env = envelope(box, page);
  const int r_lo = std::max(0, static_cast<int>(std::floor(env.y_min * H)) - 1);
  const int r_hi = std::min(page.height_px - 1, static_cast<int>(std::ceil(env.y_max * H)));
  const int c_lo = std::max(0, static_cast<int>(std::floor(env.x_min * W)) - 1);
  const int c_hi = std::min(page.width_px - 1, static_cast<int>(std::ceil(env.x_max * W)));
  for (int r = r_lo; r <= r_hi; ++r) {
    for (int col = c_lo; col <= c_hi; ++col) {
      const double dx = col + 0.5 - cx;
      const double dy = r + 0.5 - cy;
      // Inverse rotation into the box frame.
      const double u = c * dx + s * dy;
      const double v = -s * dx + c * dy;
      if (std::abs(u) <= hw && std::abs(v) <= hh) out.set(r, col, true);
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "erosion radius must be >= 0");
  if (radius == 0) return mask;
  const int W = mask.width();
  const int H = mask.height();
  // Separable min filter: rows, then columns. Out-of-raster counts as background.
  std::vector<std::uint8_t> tmp(mask.size(), 0);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      bool keep = true;
      for (int d = -radius; d <= radius && keep; ++d) {
        const int cc = c + d;
        keep = cc >= 0 && cc < W && mask.at(r, cc);
      }
      tmp[static_cast<std::size_t>(r) * W + c] = keep;
    }
  }
  std::vector<std::uint8_t> bits(mask.size(), 0);
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      bool keep = true;
      for (int d = -radius; d <= radius && keep; ++d) {
        const int rr = r + d;
        keep = rr >= 0 && rr < H && tmp[static_cast<std::size_t>(rr) * W + c];
      }
      bits[static_cast<std::size_t>(r) * W + c] = keep;
    }
  }
  return BinaryMask(W, H, std::move(bits));
}

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::DimensionMismatch, "mask dimensions differ");
  }
  std::vector<std::uint8_t> bits(a.size());
  const auto ab = a.bits();
  const auto bb = b.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = ab[i] & bb[i];
  return BinaryMask(a.width(), a.height(), std::move(bits));
}

}  // namespace mapdesign
