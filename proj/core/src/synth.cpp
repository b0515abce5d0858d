#include "tamperlens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tamperlens {

namespace {

// Snap coordinates that are within 1e-9 of a grid point so exact-angle
// rotations stay exact index permutations despite cos/sin rounding.
double snap_to_grid(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma < 0.0 || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be finite and >= 0");
  }
  if (sigma == 0.0 || img.empty()) {
    return img;
  }

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    kernel[i + radius] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;

  const int width = img.width();
  const int height = img.height();

  // Horizontal pass, edge replication.
  std::vector<double> tmp(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * img.at_clamped(x + i, y);
      }
      tmp[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }

  // Vertical pass.
  std::vector<std::uint8_t> out(tmp.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, height - 1);
        acc += kernel[i + radius] * tmp[static_cast<std::size_t>(yy) * width + x];
      }
      const long v = std::lround(acc);
      out[static_cast<std::size_t>(y) * width + x] =
          static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
  }
  return GrayImage(width, height, std::move(out));
}

GrayImage rotate_image(const GrayImage& img, double angle_deg) {
  if (!std::isfinite(angle_deg)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  if (img.empty()) {
    return img;
  }

  const int width = img.width();
  const int height = img.height();
  const double rad = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;

  std::vector<std::uint8_t> out(static_cast<std::size_t>(width) * height, 0);
  for (int y = 0; y < height; ++y) {
    const double dy = y - cy;
    for (int x = 0; x < width; ++x) {
      const double dx = x - cx;
      const double sx = snap_to_grid(cx + c * dx - s * dy);
      const double sy = snap_to_grid(cy + s * dx + c * dy);
      if (sx < 0.0 || sy < 0.0 || sx > width - 1 || sy > height - 1) {
        continue;  // outside the source, stays 0
      }
      const int x0 = static_cast<int>(sx);
      const int y0 = static_cast<int>(sy);
      const double fx = sx - x0;
      const double fy = sy - y0;
      const int x1 = std::min(x0 + 1, width - 1);
      const int y1 = std::min(y0 + 1, height - 1);
      const double v = (1.0 - fx) * (1.0 - fy) * img.at(x0, y0) +
                       fx * (1.0 - fy) * img.at(x1, y0) +
                       (1.0 - fx) * fy * img.at(x0, y1) +
                       fx * fy * img.at(x1, y1);
      const long rounded = std::lround(v);
      out[static_cast<std::size_t>(y) * width + x] =
          static_cast<std::uint8_t>(std::clamp(rounded, 0L, 255L));
    }
  }
  return GrayImage(width, height, std::move(out));
}

GrayImage obstruct(const GrayImage& img, std::uint8_t level, double coverage) {
  if (!(coverage > 0.0) || coverage > 1.0) {
    throw std::invalid_argument("coverage must be in (0, 1]");
  }
  if (img.empty()) {
    return img;
  }
  const int rows = static_cast<int>(std::ceil(coverage * img.height()));
  std::vector<std::uint8_t> out(img.pixels().begin(), img.pixels().end());
  std::fill(out.begin(), out.begin() + static_cast<std::size_t>(rows) * img.width(), level);
  return GrayImage(img.width(), img.height(), std::move(out));
}

GrayImage brightness_jitter(const GrayImage& img, int delta) {
  if (img.empty()) {
    return img;
  }
  std::vector<std::uint8_t> out(img.pixel_count());
  const std::span<const std::uint8_t> src = img.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::clamp(static_cast<int>(src[i]) + delta, 0, 255));
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

}  // namespace tamperlens
