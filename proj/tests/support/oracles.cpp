#include "support/oracles.hpp"

#include <stdexcept>

namespace oracles {

using tamperlens::Descriptor256;
using tamperlens::GrayImage;

namespace {

// Radius-3 circle, restated here so the oracle shares nothing with the
// implementation beyond the definition itself.
constexpr int kCx[16] = {0, 1, 2, 3, 3, 3, 2, 1, 0, -1, -2, -3, -3, -3, -2, -1};
constexpr int kCy[16] = {-3, -3, -2, -1, 0, 1, 2, 3, 3, 3, 2, 1, 0, -1, -2, -3};

bool is_corner_literal(const GrayImage& img, int x, int y, int t) {
  const int center = img.at(x, y);
  for (int start = 0; start < 16; ++start) {
    bool all_brighter = true;
    bool all_darker = true;
    for (int k = 0; k < 9; ++k) {
      const int i = (start + k) % 16;
      const int v = img.at(x + kCx[i], y + kCy[i]);
      all_brighter = all_brighter && (v > center + t);
      all_darker = all_darker && (v < center - t);
    }
    if (all_brighter || all_darker) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::uint8_t> fast_corner_mask(const GrayImage& img, int threshold) {
  std::vector<std::uint8_t> mask(img.pixel_count(), 0);
  for (int y = 3; y < img.height() - 3; ++y) {
    for (int x = 3; x < img.width() - 3; ++x) {
      if (is_corner_literal(img, x, y, threshold)) {
        mask[static_cast<std::size_t>(y) * img.width() + x] = 1;
      }
    }
  }
  return mask;
}

int hamming(const Descriptor256& a, const Descriptor256& b) {
  int count = 0;
  for (int i = 0; i < 256; ++i) {
    if (a.bit(i) != b.bit(i)) ++count;
  }
  return count;
}

GrayImage rotate90(const GrayImage& img) {
  if (img.width() != img.height()) {
    throw std::invalid_argument("rotate90 oracle needs a square image");
  }
  const int w = img.width();
  GrayImage out(w, w);
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = img.at(w - 1 - y, x);
    }
  }
  return out;
}

GrayImage rotate180(const GrayImage& img) {
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out.at(x, y) = img.at(img.width() - 1 - x, img.height() - 1 - y);
    }
  }
  return out;
}

}  // namespace oracles
