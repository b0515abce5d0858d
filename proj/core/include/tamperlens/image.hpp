#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tamperlens {

// 8-bit single-channel raster, row-major. The whole pipeline treats images
// as immutable values; every operation returns a fresh image, so instances
// may be shared across threads freely.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t pixel_count() const { return data_.size(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

  // Edge-replicated fetch for border handling.
  std::uint8_t at_clamped(int x, int y) const;

  std::span<const std::uint8_t> pixels() const { return data_; }
  const std::uint8_t* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Interleaved 8-bit R,G,B triplets, row-major.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t channel(int x, int y, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  std::span<const std::uint8_t> pixels() const { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// BT.601 luma, round half up: gray = round(0.299 R + 0.587 G + 0.114 B).
GrayImage rgb_to_gray(const RgbImage& img);

}  // namespace tamperlens
