#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mapdesign/error.hpp"
#include "mapdesign/layout.hpp"
#include "oracles.hpp"

using namespace mapdesign;
using oracle::element;

TEST_CASE("hierarchy deviation") {
  CHECK(hierarchy_deviation({0.5, 0.5}).d_hier == 0.0);
  CHECK(hierarchy_deviation({0.0, 0.0}).d_hier == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hierarchy_deviation({1.0, 0.0}).d_hier == doctest::Approx(1.0).epsilon(1e-12));
  const auto d = hierarchy_deviation({0.75, 0.5});
  CHECK(d.d_horizontal == 0.5);
  CHECK(d.d_vertical == 0.0);
  CHECK(d.d_hier == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hierarchy_deviation({0.25, 0.8}).d_vertical == doctest::Approx(0.6));
}

TEST_CASE("compactness") {
  CHECK(compactness(10000.0, 10000.0) == 1.0);
  CHECK(compactness(2500.0, 10000.0) == 0.25);
  CHECK_THROWS_AS(compactness(1.0, 0.0), Error);
  CHECK_THROWS_AS(compactness(2.0, 1.0), Error);

  const std::vector<MapElement> els = {{ElementKind::MainMap, OrientedBox(0.5, 0.5, 0.9, 0.85, 0.0)}};
  const auto p = layout_profile(els, PageGeometry(300, 200), nullptr);
  CHECK(p.r_map == doctest::Approx(0.765).epsilon(1e-12));
  CHECK_FALSE(p.from_mask);
}

TEST_CASE("stacked boxes share vertical lines only") {
  const std::vector<MapElement> els = {
      element(ElementKind::MainMap, 0.2, 0.1, 0.6, 0.3),
      element(ElementKind::Legend, 0.2, 0.6, 0.6, 0.8),
  };
  const auto a = alignment(els, PageGeometry(100, 100));
  CHECK(a.total_v == 6);
  CHECK(a.misaligned_v == 0);
  CHECK(a.r_vertical == 0.0);
  CHECK(a.r_horizontal == 1.0);
}

TEST_CASE("three boxes sharing only their left edge") {
  const std::vector<MapElement> els = {
      element(ElementKind::MainMap, 0.1, 0.05, 0.2, 0.15),
      element(ElementKind::Legend, 0.1, 0.4, 0.4, 0.5),
      element(ElementKind::Title, 0.1, 0.7, 0.6, 0.9),
  };
  const auto a = alignment(els, PageGeometry(100, 100));
  CHECK(a.misaligned_v == 6);
  CHECK(a.r_vertical == doctest::Approx(6.0 / 9.0));
}

TEST_CASE("alignment degenerate and tolerance behaviour") {
  const std::vector<MapElement> one = {element(ElementKind::MainMap, 0.1, 0.1, 0.9, 0.9)};
  const auto a1 = alignment(one, PageGeometry(10, 10));
  CHECK(a1.r_horizontal == 0.0);
  CHECK(a1.r_vertical == 0.0);

  std::mt19937 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto els = oracle::random_layout(rng, 2 + i % 5);
    LayoutOptions wide;
    wide.alignment_tolerance = 1.0;
    const auto a = alignment(els, PageGeometry(100, 80), wide);
    CHECK(a.r_horizontal == 0.0);
    CHECK(a.r_vertical == 0.0);
  }

  // Lines 0.004 apart chain into one cluster at tolerance 0.005.
  const std::vector<MapElement> chained = {
      element(ElementKind::MainMap, 0.100, 0.1, 0.3, 0.2),
      element(ElementKind::Legend, 0.104, 0.5, 0.5, 0.6),
  };
  LayoutOptions tight;
  tight.alignment_tolerance = 0.005;
  tight.sight_lines = SightLineMode::EdgesOnly;
  const auto a2 = alignment(chained, PageGeometry(100, 100), tight);
  CHECK(a2.total_v == 4);
  CHECK(a2.misaligned_v == 2);
  tight.alignment_tolerance = 0.003;
  CHECK(alignment(chained, PageGeometry(100, 100), tight).misaligned_v == 4);

  LayoutOptions bad;
  bad.alignment_tolerance = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("balance of simple arrangements") {
  const PageGeometry page(100, 100);
  const std::vector<MapElement> centered = {element(ElementKind::MainMap, 0.3, 0.3, 0.7, 0.7)};
  const auto c = visual_balance(centered, page);
  CHECK(c.b_horizontal == 0.0);
  CHECK(c.b_vertical == 0.0);

  const std::vector<MapElement> top = {element(ElementKind::Legend, 0.1, 0.1, 0.3, 0.4)};
  CHECK(visual_balance(top, page).b_horizontal == 1.0);
  CHECK(visual_balance(top, page).b_vertical == 1.0);

  const std::vector<MapElement> mirrored = {
      element(ElementKind::Legend, 0.1, 0.1, 0.3, 0.3),
      element(ElementKind::ScaleBar, 0.1, 0.7, 0.3, 0.9),
  };
  CHECK(visual_balance(mirrored, page).b_horizontal == doctest::Approx(0.0).epsilon(1e-15));

  // Area weighting ignores the lever arm.
  const std::vector<MapElement> uneven = {
      element(ElementKind::Legend, 0.0, 0.0, 0.2, 0.1),   // far from axis
      element(ElementKind::ScaleBar, 0.0, 0.5, 0.2, 0.6), // next to axis
  };
  CHECK(visual_balance(uneven, page, BalanceWeight::Area).b_horizontal == doctest::Approx(0.0).epsilon(1e-15));
  const auto m = visual_balance(uneven, page, BalanceWeight::Moment);
  CHECK(m.w_top == doctest::Approx(0.02 * 0.45));
  CHECK(m.w_bottom == doctest::Approx(0.02 * 0.05));
  CHECK(m.b_horizontal == doctest::Approx((0.009 - 0.001) / 0.010));
}

TEST_CASE("mirroring a layout negates balance") {
  std::mt19937 rng(12);
  const PageGeometry page(160, 90);
  for (int i = 0; i < 50; ++i) {
    const auto els = oracle::random_layout(rng, 1 + i % 6);
    const auto b = visual_balance(els, page);
    const auto bx = visual_balance(oracle::mirror_x(els), page);
    const auto by = visual_balance(oracle::mirror_y(els), page);
    CHECK(bx.b_vertical == doctest::Approx(-b.b_vertical).epsilon(1e-9));
    CHECK(bx.b_horizontal == doctest::Approx(b.b_horizontal).epsilon(1e-9));
    CHECK(by.b_horizontal == doctest::Approx(-b.b_horizontal).epsilon(1e-9));
  }
}

TEST_CASE("full-page main map is fully degenerate") {
  const PageGeometry page(50, 40);
  const std::vector<MapElement> els = {{ElementKind::MainMap, OrientedBox(0.5, 0.5, 1.0, 1.0, 0.0)}};
  const BinaryMask full(50, 40, true);
  for (const BinaryMask* mask : {&full, static_cast<const BinaryMask*>(nullptr)}) {
    const auto p = layout_profile(els, page, mask);
    CHECK(p.d_hier() == 0.0);
    CHECK(p.r_map == 1.0);
    CHECK(p.alignment.r_horizontal == 0.0);
    CHECK(p.alignment.r_vertical == 0.0);
    CHECK(p.balance.b_horizontal == 0.0);
    CHECK(p.balance.b_vertical == 0.0);
  }
}

TEST_CASE("main map with legend, hand computed") {
  // 40x20 page; main map occupies columns 10..29 and rows 5..14, legend
  // columns 32..37 and rows 11..14.
  const PageGeometry page(40, 20);
  BinaryMask mask(40, 20);
  for (int r = 5; r < 15; ++r)
    for (int c = 10; c < 30; ++c) mask.set(r, c, true);
  const std::vector<MapElement> els = {
      {ElementKind::MainMap, OrientedBox(0.5, 0.5, 0.5, 0.5, 0.0)},
      {ElementKind::Legend, OrientedBox(0.875, 0.65, 0.15, 0.2, 0.0)},
  };
  const auto p = layout_profile(els, page, &mask);
  CHECK(p.from_mask);
  CHECK(p.d_hier() == 0.0);
  CHECK(p.r_map == 0.25);
  // Only the shared bottom edge (y = 0.75) aligns.
  CHECK(p.alignment.r_horizontal == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(p.alignment.r_vertical == 1.0);
  // Main map splits evenly; the legend (area 0.03) sits below and right.
  CHECK(p.balance.b_horizontal == doctest::Approx(-0.0045 / 0.03575).epsilon(1e-12));
  CHECK(p.balance.b_vertical == doctest::Approx(-0.01125 / 0.0425).epsilon(1e-12));

  const std::vector<MapElement> none = {els[1]};
  CHECK_THROWS_AS(layout_profile(none, page, nullptr), Error);
  const std::vector<MapElement> two = {els[0], els[0]};
  CHECK_THROWS_AS(layout_profile(two, page, nullptr), Error);
  CHECK_THROWS_AS(layout_profile(els, PageGeometry(20, 20), &mask), Error);
}
