#include "mapdesign/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "mapdesign/error.hpp"

namespace mapdesign {

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  rgb.assign(3 * pixel_count(), 0);
}

void RgbImage::set(int row, int col, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const std::size_t i = 3 * (static_cast<std::size_t>(row) * width + col);
  rgb[i] = r;
  rgb[i + 1] = g;
  rgb[i + 2] = b;
}

namespace {

cv::Mat load_raw(const std::filesystem::path& path, int flags) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  cv::Mat m;
  try {
    m = cv::imread(path.string(), flags);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::ImageDecodeError, path.string() + ": " + e.what());
  }
  if (m.empty()) throw Error(ErrorCode::ImageDecodeError, path.string());
  if (m.depth() != CV_8U) {
    throw Error(ErrorCode::ImageDecodeError, path.string() + ": expected 8-bit channels");
  }
  return m;
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
  const cv::Mat m = load_raw(path, cv::IMREAD_UNCHANGED);
  const int ch = m.channels();
  if (ch != 1 && ch != 3 && ch != 4) {
    throw Error(ErrorCode::ImageDecodeError, path.string() + ": unsupported channel count");
  }
  RgbImage img(m.cols, m.rows);
  if (ch == 4) img.alpha.emplace(img.pixel_count());
  for (int r = 0; r < m.rows; ++r) {
    const std::uint8_t* row = m.ptr<std::uint8_t>(r);
    for (int c = 0; c < m.cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * m.cols + c;
      const std::uint8_t* px = row + static_cast<std::size_t>(c) * ch;
      if (ch == 1) {
        img.set(r, c, px[0], px[0], px[0]);
      } else {
        // OpenCV stores BGR(A).
        img.set(r, c, px[2], px[1], px[0]);
        if (ch == 4) (*img.alpha)[i] = px[3];
      }
    }
  }
  return img;
}

BinaryMask read_mask(const std::filesystem::path& path) {
  const cv::Mat m = load_raw(path, cv::IMREAD_UNCHANGED);
  if (m.channels() != 1) {
    throw Error(ErrorCode::ImageDecodeError, path.string() + ": mask must be single-channel");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(m.rows) * m.cols);
  for (int r = 0; r < m.rows; ++r) {
    const std::uint8_t* row = m.ptr<std::uint8_t>(r);
    for (int c = 0; c < m.cols; ++c) bits[static_cast<std::size_t>(r) * m.cols + c] = row[c] != 0;
  }
  return BinaryMask(m.cols, m.rows, std::move(bits));
}

void write_image_png(const std::filesystem::path& path, const RgbImage& image) {
  const bool has_alpha = image.alpha.has_value();
  cv::Mat m(image.height, image.width, has_alpha ? CV_8UC4 : CV_8UC3);
  for (int r = 0; r < image.height; ++r) {
    std::uint8_t* row = m.ptr<std::uint8_t>(r);
    for (int c = 0; c < image.width; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * image.width + c;
      const std::uint8_t* px = image.pixel(i);
      std::uint8_t* out = row + static_cast<std::size_t>(c) * (has_alpha ? 4 : 3);
      out[0] = px[2];
      out[1] = px[1];
      out[2] = px[0];
      if (has_alpha) out[3] = (*image.alpha)[i];
    }
  }
  if (!cv::imwrite(path.string(), m)) throw Error(ErrorCode::IoError, path.string());
}

void write_mask_png(const std::filesystem::path& path, const BinaryMask& mask) {
  cv::Mat m(mask.height(), mask.width(), CV_8UC1);
  for (int r = 0; r < mask.height(); ++r) {
    std::uint8_t* row = m.ptr<std::uint8_t>(r);
    for (int c = 0; c < mask.width(); ++c) row[c] = mask.at(r, c) ? 255 : 0;
  }
  if (!cv::imwrite(path.string(), m)) throw Error(ErrorCode::IoError, path.string());
}

BinaryMask alpha_mask(const RgbImage& image) {
  if (!image.alpha) return BinaryMask(image.width, image.height, true);
  std::vector<std::uint8_t> bits(image.pixel_count());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (*image.alpha)[i] != 0;
  return BinaryMask(image.width, image.height, std::move(bits));
}

}  // namespace mapdesign
