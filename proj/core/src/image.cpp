#include "tamperlens/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tamperlens {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("raster size does not match dimensions");
  }
}

std::uint8_t GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y);
}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height * 3) {
    throw std::invalid_argument("raster size does not match dimensions");
  }
}

GrayImage rgb_to_gray(const RgbImage& img) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width()) * img.height());
  const std::span<const std::uint8_t> src = img.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r = src[i * 3 + 0];
    const double g = src[i * 3 + 1];
    const double b = src[i * 3 + 2];
    const long v = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
    out[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

}  // namespace tamperlens
