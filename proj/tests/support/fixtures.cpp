#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tamperlens/synth.hpp"

namespace fixtures {

using tamperlens::GrayImage;

double uniform01(std::mt19937& rng) {
  return rng() * (1.0 / 4294967296.0);
}

double unit_gauss(std::mt19937& rng) {
  double sum = 0.0;
  for (int i = 0; i < 12; ++i) sum += uniform01(rng);
  return sum - 6.0;
}

GrayImage textured(int width, int height, std::uint32_t seed) {
  constexpr int kGradientLo = 40;
  constexpr int kGradientHi = 215;
  constexpr double kBrightSpeckle = 0.06;
  constexpr double kDarkSpeckle = 0.06;

  std::mt19937 rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int bg =
          kGradientLo + (kGradientHi - kGradientLo) * x / std::max(width - 1, 1);
      const double u = uniform01(rng);
      std::uint8_t v = static_cast<std::uint8_t>(bg);
      if (u < kBrightSpeckle) {
        v = 255;
      } else if (u < kBrightSpeckle + kDarkSpeckle) {
        v = 0;
      }
      px[static_cast<std::size_t>(y) * width + x] = v;
    }
  }
  return tamperlens::gaussian_blur(GrayImage(width, height, std::move(px)), 1.0);
}

const GrayImage& standard_fixture() {
  static const GrayImage img = textured(320, 240, 7);
  return img;
}

const GrayImage& square_fixture() {
  static const GrayImage img = [] {
    const GrayImage& src = standard_fixture();
    GrayImage out(240, 240);
    for (int y = 0; y < 240; ++y) {
      for (int x = 0; x < 240; ++x) {
        out.at(x, y) = src.at(x + 40, y);
      }
    }
    return out;
  }();
  return img;
}

GrayImage checkerboard(int width, int height, int tile, std::uint8_t a, std::uint8_t b) {
  GrayImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.at(x, y) = ((x / tile + y / tile) % 2 == 0) ? a : b;
    }
  }
  return img;
}

GrayImage uniform_image(int width, int height, std::uint8_t value) {
  return GrayImage(width, height, value);
}

GrayImage add_noise(const GrayImage& img, double sigma, std::uint32_t seed) {
  std::mt19937 rng(seed);
  GrayImage out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int v = img.at(x, y) + static_cast<int>(std::lround(sigma * unit_gauss(rng)));
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return out;
}

const std::vector<int>& calibration_deltas() {
  static const std::vector<int> deltas = {-60, -40, -20, 0, 20, 40, 60, 80};
  return deltas;
}

std::vector<tamperlens::NamedImage> calibration_references() {
  std::vector<tamperlens::NamedImage> refs;
  for (int delta : calibration_deltas()) {
    refs.push_back({"ref_delta_" + std::to_string(delta),
                    tamperlens::brightness_jitter(standard_fixture(), delta)});
  }
  return refs;
}

const tamperlens::CalibrationProfile& standard_profile() {
  static const tamperlens::CalibrationProfile profile = [] {
    const std::vector<tamperlens::NamedImage> refs = calibration_references();
    return tamperlens::calibrate(refs, tamperlens::CalibrationConfig{});
  }();
  return profile;
}

}  // namespace fixtures
