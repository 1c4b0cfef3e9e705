#include <doctest.h>

#include <cmath>
#include <random>

#include "mapdesign/color.hpp"
#include "mapdesign/error.hpp"
#include "mapdesign/image_io.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mapdesign;

namespace {

RgbImage solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.set(y, x, r, g, b);
  return img;
}

}  // namespace

TEST_CASE("hexcone conversion") {
  const auto white = rgb_to_hsv(255, 255, 255);
  CHECK(white.h == 0.0);
  CHECK(white.s == 0.0);
  CHECK(white.v == 1.0);

  const auto red = rgb_to_hsv(255, 0, 0);
  CHECK(red.h == 0.0);
  CHECK(red.s == 1.0);
  CHECK(red.v == 1.0);

  const auto azure = rgb_to_hsv(0, 128, 255);
  CHECK(azure.h == doctest::Approx(60.0 * (4.0 - 128.0 / 255.0)).epsilon(1e-12));
  CHECK(azure.h == doctest::Approx(209.88).epsilon(1e-4));
  CHECK(azure.s == 1.0);
  CHECK(azure.v == 1.0);

  CHECK(rgb_to_hsv(0, 0, 0).s == 0.0);
  CHECK(rgb_to_hsv(255, 0, 1).h == doctest::Approx(360.0 - 60.0 / 255.0));
}

TEST_CASE("classification bins") {
  CHECK(classify_hue({123.0, 0.0, 1.0}) == HueCategory::White);
  CHECK(classify_hue({0.0, 1.0, 1.0}) == HueCategory::Red);
  CHECK(classify_hue({210.0, 0.6, 0.5}) == HueCategory::Blue);
  CHECK(classify_hue({210.0, 0.6, 0.1}) == HueCategory::Black);
  CHECK(classify_hue({210.0, 0.05, 0.5}) == HueCategory::Gray);
  CHECK(classify_hue({350.0, 0.5, 0.5}) == HueCategory::Red);
  CHECK(classify_hue({15.0, 0.5, 0.5}) == HueCategory::Orange);
  CHECK(classify_hue({45.0, 0.5, 0.5}) == HueCategory::Yellow);
  CHECK(classify_hue({70.0, 0.5, 0.5}) == HueCategory::Green);
  CHECK(classify_hue({165.0, 0.5, 0.5}) == HueCategory::Cyan);
  CHECK(classify_hue({200.0, 0.5, 0.5}) == HueCategory::Blue);
  CHECK(classify_hue({255.0, 0.5, 0.5}) == HueCategory::Purple);
  CHECK(classify_hue({344.999, 0.5, 0.5}) == HueCategory::Purple);
}

TEST_CASE("classification matches exact integer reference on a lattice of RGB triples") {
  for (int r = 0; r < 256; r += 3) {
    for (int g = 0; g < 256; g += 3) {
      for (int b = 0; b < 256; b += 3) {
        const auto got = classify_hue(rgb_to_hsv(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                                 static_cast<std::uint8_t>(b)));
        REQUIRE(got == oracle::classify_exact(r, g, b));
      }
    }
  }
}

TEST_CASE("threshold validation") {
  HueThresholds t;
  CHECK_NOTHROW(t.validate());
  t.black_max_value = 1.5;
  CHECK_THROWS_AS(t.validate(), Error);
  t = {};
  t.chromatic_starts = {15.0, 60.0, 45.0, 165.0, 200.0, 255.0, 345.0};
  CHECK_THROWS_AS(t.validate(), Error);
  ColorOptions o;
  o.min_hue_share = 0.01;
  CHECK_NOTHROW(o.validate());
  o.min_hue_share = 0.0;
  CHECK_THROWS_AS(o.validate(), Error);
  o.min_hue_share = 1.2;
  CHECK_THROWS_AS(o.validate(), Error);
}

TEST_CASE("histograms of constructed images") {
  const auto white = hue_histogram(solid(8, 8, 255, 255, 255), BinaryMask(8, 8, true));
  CHECK(white.proportion(HueCategory::White) == 1.0);
  CHECK(white.pixel_count == 64);

  RgbImage split(10, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 10; ++x) {
      if (x < 5) split.set(y, x, 255, 0, 0);
      else split.set(y, x, 0, 0, 255);
    }
  const auto hist = hue_histogram(split, BinaryMask(10, 4, true));
  CHECK(hist.proportion(HueCategory::Red) == 0.5);
  CHECK(hist.proportion(HueCategory::Blue) == 0.5);

  CHECK_THROWS_AS(hue_histogram(split, BinaryMask(4, 4, true)), Error);
  CHECK_THROWS_AS(hue_histogram(split, BinaryMask(10, 4)), Error);
}

TEST_CASE("histogram equals per-pixel tally on arbitrary 16x16 images") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = oracle::random_image(rng, 16, 16);
    auto mask = oracle::random_mask(rng, 16, 16, 0.6);
    mask.set(0, 0, true);
    const auto hist = hue_histogram(img, mask);
    const auto ref = oracle::color_reference(img, mask);
    for (std::size_t i = 0; i < kHueCategoryCount; ++i) {
      CHECK(hist.counts[i] == ref.counts[i]);
      CHECK(hist.proportions[i] == ref.proportions[i]);
    }
  }
}

TEST_CASE("histogram merge adds counts") {
  std::array<std::size_t, kHueCategoryCount> a{}, b{};
  a[2] = 3;
  b[2] = 1;
  b[4] = 4;
  const auto merged = HueHistogram::from_counts(a).merged(HueHistogram::from_counts(b));
  CHECK(merged.pixel_count == 8);
  CHECK(merged.proportion(HueCategory::White) == 0.5);
  CHECK(merged.proportion(HueCategory::Orange) == 0.5);
}

TEST_CASE("profiles of constructed images") {
  const auto white = color_profile(solid(6, 6, 255, 255, 255), BinaryMask(6, 6, true));
  CHECK(white.h_main == HueCategory::White);
  CHECK(white.s_ave == 0.0);
  CHECK(white.b_ave == 1.0);
  CHECK(white.b_con == 0.0);
  CHECK(white.n_hue == 1);
  CHECK(white.e_hue == 0.0);

  RgbImage split(8, 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 8; ++x) {
      if (x < 4) split.set(y, x, 255, 0, 0);
      else split.set(y, x, 0, 0, 255);
    }
  const auto two = color_profile(split, BinaryMask(8, 2, true));
  CHECK(two.n_hue == 2);
  CHECK(two.e_hue == 1.0);
  CHECK(two.s_ave == 1.0);
  CHECK(two.b_ave == 1.0);
  CHECK(two.b_con == 0.0);
  CHECK(two.h_main == HueCategory::Red);  // tie goes to the earlier category
}

TEST_CASE("minor hues are dropped before the entropy") {
  RgbImage img(10, 10);
  for (int i = 0; i < 100; ++i) {
    const int y = i / 10, x = i % 10;
    if (i < 90) img.set(y, x, 255, 255, 255);
    else if (i < 96) img.set(y, x, 255, 0, 0);
    else img.set(y, x, 0, 200, 0);
  }
  const auto p = color_profile(img, BinaryMask(10, 10, true));
  CHECK(p.n_hue == 2);
  const double hand = -(0.9375 * std::log2(0.9375) + 0.0625 * std::log2(0.0625));
  CHECK(p.e_hue == doctest::Approx(hand).epsilon(1e-12));
  CHECK(p.e_hue == doctest::Approx(0.3373).epsilon(1e-4));
  CHECK(p.h_main == HueCategory::White);
}

TEST_CASE("hue complexity bounds and equality cases") {
  std::array<std::size_t, kHueCategoryCount> counts{};
  counts[5] = 40;
  auto c = hue_complexity(HueHistogram::from_counts(counts));
  CHECK(c.n_hue == 1);
  CHECK(c.e_hue == 0.0);

  counts = {};
  for (std::size_t i = 0; i < 7; ++i) counts[i] = 13;
  c = hue_complexity(HueHistogram::from_counts(counts));
  CHECK(c.n_hue == 7);
  CHECK(c.e_hue == std::log2(7.0));

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> cnt(0, 50);
  for (int i = 0; i < 200; ++i) {
    for (auto& v : counts) v = static_cast<std::size_t>(cnt(rng));
    counts[0] += 1;
    c = hue_complexity(HueHistogram::from_counts(counts));
    REQUIRE(c.e_hue >= 0.0);
    REQUIRE(c.e_hue <= std::log2(std::max(c.n_hue, 1)));
  }
}

TEST_CASE("profile matches the per-pixel reference") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = oracle::random_image(rng, 24, 20);
    auto mask = oracle::random_mask(rng, 24, 20, 0.5);
    mask.set(3, 3, true);
    const auto p = color_profile(img, mask);
    const auto ref = oracle::color_reference(img, mask);
    CHECK(p.s_ave == ref.s_ave);
    CHECK(p.b_ave == ref.b_ave);
    CHECK(p.b_con == doctest::Approx(ref.b_con).epsilon(1e-9));
    CHECK(p.e_hue == doctest::Approx(ref.e_hue).epsilon(1e-9));
    CHECK(p.n_hue == ref.n_hue);
    CHECK(p.h_main == ref.h_main);
  }
}

TEST_CASE("sampling mask honours erosion and alpha") {
  auto img = solid(6, 6, 10, 200, 10);
  img.alpha = std::vector<std::uint8_t>(36, 255);
  (*img.alpha)[0] = 0;
  (*img.alpha)[14] = 0;  // row 2, col 2
  const auto sampled = color_sampling_mask(img, BinaryMask(6, 6, true), 0);
  CHECK(mask_area(sampled) == 34);
  CHECK_FALSE(sampled.at(2, 2));
  const auto eroded = color_sampling_mask(img, BinaryMask(6, 6, true), 1);
  CHECK(mask_area(eroded) == 15);

  ColorOptions opts;
  opts.erosion_radius = 3;
  CHECK_THROWS_AS(color_profile(img, BinaryMask(6, 6, true), opts), Error);
}

TEST_CASE("png round trip") {
  testing_support::TempDir dir("png");
  std::mt19937 rng(9);
  const auto img = oracle::random_image(rng, 13, 7);
  write_image_png(dir / "a.png", img);
  const auto back = read_image(dir / "a.png");
  CHECK(back.width == 13);
  CHECK(back.height == 7);
  CHECK(back.rgb == img.rgb);
  CHECK_FALSE(back.alpha.has_value());

  const auto m = oracle::random_mask(rng, 13, 7, 0.4);
  write_mask_png(dir / "m.png", m);
  CHECK(read_mask(dir / "m.png") == m);

  try {
    read_image(dir / "missing.png");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FileNotFound);
  }
  testing_support::write_text(dir / "junk.png", "nope");
  try {
    read_image(dir / "junk.png");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImageDecodeError);
  }
}
