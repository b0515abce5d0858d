#include "tamperlens/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tamperlens {

double laplacian_variance(const GrayImage& img) {
  if (img.width() < 3 || img.height() < 3) {
    throw std::invalid_argument("laplacian_variance needs at least a 3x3 image");
  }

  const int width = img.width();
  const int height = img.height();
  const std::size_t n = static_cast<std::size_t>(width - 2) * (height - 2);
  std::vector<int> response;
  response.reserve(n);

  for (int y = 1; y < height - 1; ++y) {
    for (int x = 1; x < width - 1; ++x) {
      const int r = img.at(x, y - 1) + img.at(x - 1, y) + img.at(x + 1, y) + img.at(x, y + 1) -
                    4 * img.at(x, y);
      response.push_back(r);
    }
  }

  double mean = 0.0;
  for (int r : response) mean += r;
  mean /= static_cast<double>(n);

  double var = 0.0;
  for (int r : response) {
    const double d = r - mean;
    var += d * d;
  }
  return var / static_cast<double>(n);
}

double intensity_std(const GrayImage& img) {
  if (img.empty()) {
    throw std::invalid_argument("intensity_std needs a nonempty image");
  }

  const std::span<const std::uint8_t> pixels = img.pixels();
  double mean = 0.0;
  for (std::uint8_t p : pixels) mean += p;
  mean /= static_cast<double>(pixels.size());

  double var = 0.0;
  for (std::uint8_t p : pixels) {
    const double d = p - mean;
    var += d * d;
  }
  return std::sqrt(var / static_cast<double>(pixels.size()));
}

}  // namespace tamperlens
