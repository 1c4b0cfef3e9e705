// Writes the synthetic 20-map corpus used by the end-to-end tests:
//   <dir>/manifest.jsonl, <dir>/images/*.png, <dir>/masks/*.png
// Output is fully determined by the map index; rerunning reproduces the
// committed fixture byte for byte.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "mapdesign/image_io.hpp"
#include "mapdesign/mask.hpp"

namespace {

using mapdesign::BinaryMask;
using mapdesign::RgbImage;
namespace fs = std::filesystem;

constexpr int kWidth = 96;
constexpr int kHeight = 72;
constexpr int kMaps = 20;

struct Rgb {
  std::uint8_t r, g, b;
};

// Palette mixing neutrals and the chromatic categories.
constexpr Rgb kPalette[] = {
    {245, 245, 245}, {200, 200, 200}, {120, 120, 120}, {20, 20, 20},   {220, 40, 40},
    {240, 150, 30},  {235, 220, 60},  {60, 170, 80},   {50, 200, 210}, {40, 90, 220},
    {150, 60, 200},  {250, 230, 230},
};

struct Box {
  double cx, cy, w, h, theta;
};

struct Element {
  std::string kind;
  Box box;
};

void fill_rect(RgbImage& img, int r0, int c0, int r1, int c1, Rgb color) {
  for (int r = std::max(r0, 0); r < std::min(r1, img.height); ++r) {
    for (int c = std::max(c0, 0); c < std::min(c1, img.width); ++c) img.set(r, c, color.r, color.g, color.b);
  }
}

void fill_mask(BinaryMask& m, int r0, int c0, int r1, int c1) {
  for (int r = std::max(r0, 0); r < std::min(r1, m.height()); ++r) {
    for (int c = std::max(c0, 0); c < std::min(c1, m.width()); ++c) m.set(r, c, true);
  }
}

Box pixel_box(int r0, int c0, int r1, int c1, double theta = 0.0) {
  return {(c0 + c1) / 2.0 / kWidth, (r0 + r1) / 2.0 / kHeight, static_cast<double>(c1 - c0) / kWidth,
          static_cast<double>(r1 - r0) / kHeight, theta};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture_corpus <output-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "masks");

  const char* journals = "ABCDEFGHIJKLMNOP";
  std::ofstream manifest(dir / "manifest.jsonl", std::ios::binary);

  for (int i = 0; i < kMaps; ++i) {
    std::mt19937 rng(1000u + static_cast<unsigned>(i));
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    char id[16];
    std::snprintf(id, sizeof id, "m%02d", i);
    const bool zh = i % 2 == 0;
    const int year = 1990 + (i / 2) * 3;  // 1990..2017, both languages per year
    const std::string journal(1, journals[(i * 5) % 16]);

    RgbImage img(kWidth, kHeight);
    fill_rect(img, 0, 0, kHeight, kWidth, {255, 255, 255});

    // Main map: a block whose margins vary per map, tiled with palette bands.
    const int top = 4 + pick(8);
    const int left = 4 + pick(10);
    const int bottom = kHeight - 4 - pick(10);
    const int right = kWidth - 4 - pick(12);
    const int bands = 1 + (i % 5);
    std::vector<Rgb> colors;
    for (int b = 0; b < bands; ++b) colors.push_back(kPalette[pick(12)]);
    for (int c = left; c < right; ++c) {
      const int band = (c - left) * bands / (right - left);
      fill_rect(img, top, c, bottom, c + 1, colors[static_cast<std::size_t>(band)]);
    }
    // Boundary strokes.
    fill_rect(img, top, left, top + 1, right, {60, 60, 60});
    fill_rect(img, bottom - 1, left, bottom, right, {60, 60, 60});

    BinaryMask mask(kWidth, kHeight);
    fill_mask(mask, top, left, bottom, right);
    // Segmentation noise: a detached speck the refinement must drop.
    if (i % 3 == 0) fill_mask(mask, 1, 1, 3, 3);

    std::vector<Element> elements;
    elements.push_back({"MainMap", pixel_box(top, left, bottom, right)});

    // Auxiliary elements on fixed index patterns.
    const bool legend = i % 4 != 3;
    const bool scale = i % 3 == 1 || i % 5 == 0;
    const bool north = i % 4 == 0;
    const bool title = i % 6 == 2;
    const bool inset = i == 7 || i == 13;
    if (legend) {
      const int r0 = bottom - 16, c0 = right - 20;
      fill_rect(img, r0, c0, r0 + 12, c0 + 16, {230, 230, 230});
      elements.push_back({"Legend", pixel_box(r0, c0, r0 + 12, c0 + 16, i % 7 == 0 ? 10.0 : 0.0)});
    }
    if (scale) {
      const int r0 = bottom - 5, c0 = left + 3;
      fill_rect(img, r0, c0, r0 + 2, c0 + 18, {10, 10, 10});
      elements.push_back({"ScaleBar", pixel_box(r0, c0, r0 + 2, c0 + 18)});
    }
    if (north) {
      const int r0 = top + 2, c0 = right - 8;
      fill_rect(img, r0, c0, r0 + 6, c0 + 4, {10, 10, 10});
      elements.push_back({"NorthArrow", pixel_box(r0, c0, r0 + 6, c0 + 4)});
    }
    if (title) {
      elements.push_back({"Title", pixel_box(0, left, 3, right)});
    }
    if (inset) {
      const int r0 = top + 2, c0 = left + 2;
      fill_rect(img, r0, c0, r0 + 14, c0 + 18, {200, 200, 200});
      elements.push_back({"InsetMap", pixel_box(r0, c0, r0 + 14, c0 + 18)});
    }

    const std::string image_rel = std::string("images/") + id + ".png";
    const std::string mask_rel = std::string("masks/") + id + ".png";
    if (i == 17) {
      // Unreadable image: the pipeline must still emit layout and a failure row.
      std::ofstream(dir / image_rel, std::ios::binary) << "not a png";
    } else {
      mapdesign::write_image_png(dir / image_rel, img);
    }
    const bool with_mask = i % 5 != 4;  // maps 4, 9, 14, 19 fall back to boxes
    if (with_mask) mapdesign::write_mask_png(dir / mask_rel, mask);

    nlohmann::ordered_json line;
    line["map_id"] = id;
    line["image_path"] = image_rel;
    line["mask_path"] = with_mask ? nlohmann::ordered_json(mask_rel) : nlohmann::ordered_json(nullptr);
    line["language"] = zh ? "zh" : "en";
    line["journal"] = journal;
    line["year"] = year;
    nlohmann::ordered_json els = nlohmann::ordered_json::array();
    for (const auto& e : elements) {
      els.push_back({{"kind", e.kind},
                     {"box", {{"cx", e.box.cx}, {"cy", e.box.cy}, {"w", e.box.w}, {"h", e.box.h}, {"theta", e.box.theta}}}});
    }
    line["elements"] = std::move(els);
    manifest << line.dump() << '\n';
  }
  return 0;
}
