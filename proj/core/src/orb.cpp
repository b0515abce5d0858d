#include "tamperlens/orb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tamperlens {

namespace {

// Radius-3 Bresenham circle, clockwise from 12 o'clock.
constexpr int kCircleX[16] = {0, 1, 2, 3, 3, 3, 2, 1, 0, -1, -2, -3, -3, -3, -2, -1};
constexpr int kCircleY[16] = {-3, -3, -2, -1, 0, 1, 2, 3, 3, 3, 2, 1, 0, -1, -2, -3};

// 16-bit circle masks: bit i set when circle pixel i passes the comparison.
struct CircleMasks {
  std::uint32_t brighter;
  std::uint32_t darker;
};

CircleMasks circle_masks(const GrayImage& img, int x, int y, int t) {
  const int center = img.at(x, y);
  const int hi = center + t;
  const int lo = center - t;
  std::uint32_t brighter = 0;
  std::uint32_t darker = 0;
  for (int i = 0; i < 16; ++i) {
    const int v = img.at(x + kCircleX[i], y + kCircleY[i]);
    brighter |= static_cast<std::uint32_t>(v > hi) << i;
    darker |= static_cast<std::uint32_t>(v < lo) << i;
  }
  return {brighter, darker};
}

// True when the 16-bit mask contains >= 9 contiguous set bits, wrapping
// allowed. Doubling the mask and AND-shifting detects the run length.
bool has_arc_of_9(std::uint32_t mask16) {
  std::uint32_t m = mask16 | (mask16 << 16);
  std::uint32_t r = m & (m >> 1);  // runs of >= 2
  r &= r >> 2;                     // >= 4
  r &= r >> 4;                     // >= 8
  r &= m >> 8;                     // >= 9
  return (r & 0xFFFFu) != 0;
}

bool is_segment_corner(const GrayImage& img, int x, int y, int t) {
  const CircleMasks masks = circle_masks(img, x, y, t);
  return has_arc_of_9(masks.brighter) || has_arc_of_9(masks.darker);
}

// Largest threshold at which the pixel is still a corner. Monotone in t,
// so a binary search over [t0, 255] suffices. Requires corner at t0.
int fast_score(const GrayImage& img, int x, int y, int t0) {
  int lo = t0;    // corner
  int hi = 255;   // never a corner (differences are at most 255, test is strict)
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (is_segment_corner(img, x, y, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Harris corner measure over a 7x7 window, k = 0.04, central differences,
// borders edge-replicated. Used for ranking only.
double harris_response(const GrayImage& img, int x, int y) {
  constexpr double kHarrisK = 0.04;
  long long a = 0, b = 0, c = 0;
  for (int v = -3; v <= 3; ++v) {
    for (int u = -3; u <= 3; ++u) {
      const int ix = img.at_clamped(x + u + 1, y + v) - img.at_clamped(x + u - 1, y + v);
      const int iy = img.at_clamped(x + u, y + v + 1) - img.at_clamped(x + u, y + v - 1);
      a += static_cast<long long>(ix) * ix;
      b += static_cast<long long>(iy) * iy;
      c += static_cast<long long>(ix) * iy;
    }
  }
  const double da = static_cast<double>(a);
  const double db = static_cast<double>(b);
  const double dc = static_cast<double>(c);
  return (da * db - dc * dc) - kHarrisK * (da + db) * (da + db);
}

// 5x5 box sum around (x, y); comparing sums is equivalent to comparing the
// box-filtered means and avoids any rounding.
int box_sum_5x5(const GrayImage& img, int x, int y) {
  int sum = 0;
  for (int v = -2; v <= 2; ++v) {
    for (int u = -2; u <= 2; ++u) {
      sum += img.at(x + u, y + v);
    }
  }
  return sum;
}

// Margin inside which a steered descriptor patch (plus the smoothing box)
// is guaranteed to stay in bounds.
int descriptor_margin(int patch_size) {
  const int half = patch_size / 2;
  return static_cast<int>(std::ceil(half * std::numbers::sqrt2)) + 2;
}

void validate_orb_params(const OrbParams& p) {
  if (p.max_features < 1) throw std::invalid_argument("max_features must be >= 1");
  if (p.pyramid_levels < 1) throw std::invalid_argument("pyramid_levels must be >= 1");
  if (!(p.scale_factor > 1.0)) throw std::invalid_argument("scale_factor must be > 1");
  if (p.patch_size < 15 || p.patch_size % 2 == 0) {
    throw std::invalid_argument("patch_size must be odd and >= 15");
  }
  if (p.fast_threshold <= 0) throw std::invalid_argument("fast_threshold must be > 0");
}

GrayImage resize_bilinear(const GrayImage& src, int dst_w, int dst_h) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(dst_w) * dst_h);
  const double sx_ratio = static_cast<double>(src.width()) / dst_w;
  const double sy_ratio = static_cast<double>(src.height()) / dst_h;
  for (int y = 0; y < dst_h; ++y) {
    const double sy = std::clamp((y + 0.5) * sy_ratio - 0.5, 0.0, src.height() - 1.0);
    const int y0 = static_cast<int>(sy);
    const int y1 = std::min(y0 + 1, src.height() - 1);
    const double fy = sy - y0;
    for (int x = 0; x < dst_w; ++x) {
      const double sx = std::clamp((x + 0.5) * sx_ratio - 0.5, 0.0, src.width() - 1.0);
      const int x0 = static_cast<int>(sx);
      const int x1 = std::min(x0 + 1, src.width() - 1);
      const double fx = sx - x0;
      const double v = (1.0 - fx) * (1.0 - fy) * src.at(x0, y0) + fx * (1.0 - fy) * src.at(x1, y0) +
                       (1.0 - fx) * fy * src.at(x0, y1) + fx * fy * src.at(x1, y1);
      out[static_cast<std::size_t>(y) * dst_w + x] =
          static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return GrayImage(dst_w, dst_h, std::move(out));
}

// Descriptor computation against a prebuilt pattern; extract() steers one
// shared pattern across all keypoints.
Descriptor256 describe_with_pattern(const GrayImage& img, const Keypoint& kp,
                                    const std::array<PatternPair, 256>& pattern, int patch_size) {
  const int cx = static_cast<int>(std::lround(kp.x));
  const int cy = static_cast<int>(std::lround(kp.y));
  const int margin = descriptor_margin(patch_size);
  if (cx < margin || cy < margin || cx > img.width() - 1 - margin ||
      cy > img.height() - 1 - margin) {
    throw std::invalid_argument("descriptor patch out of bounds");
  }

  const double rad = kp.angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);

  Descriptor256 desc;
  for (int i = 0; i < 256; ++i) {
    const PatternPair& p = pattern[i];
    const int ax = static_cast<int>(std::lround(c * p.ax - s * p.ay));
    const int ay = static_cast<int>(std::lround(s * p.ax + c * p.ay));
    const int bx = static_cast<int>(std::lround(c * p.bx - s * p.by));
    const int by = static_cast<int>(std::lround(s * p.bx + c * p.by));
    if (box_sum_5x5(img, cx + ax, cy + ay) < box_sum_5x5(img, cx + bx, cy + by)) {
      desc.set_bit(i);
    }
  }
  return desc;
}

}  // namespace

std::array<PatternPair, 256> sampling_pattern(std::uint32_t seed, int patch_size) {
  const int half = patch_size / 2;
  const double sigma = patch_size / 5.0;
  std::mt19937 rng(seed);

  // Sum of 12 uniforms minus 6: zero-mean unit-variance Gaussian built from
  // arithmetic only, so the pattern is identical everywhere.
  auto gauss = [&rng]() {
    double sum = 0.0;
    for (int i = 0; i < 12; ++i) {
      sum += rng() * (1.0 / 4294967296.0);
    }
    return sum - 6.0;
  };
  auto offset = [&]() {
    while (true) {
      const long v = std::lround(sigma * gauss());
      if (std::abs(v) <= half) return static_cast<int>(v);
    }
  };

  std::array<PatternPair, 256> pattern;
  for (PatternPair& p : pattern) {
    p.ax = offset();
    p.ay = offset();
    p.bx = offset();
    p.by = offset();
  }
  return pattern;
}

std::vector<GrayImage> build_pyramid(const GrayImage& img, int levels, double scale_factor,
                                     int min_dim) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (!(scale_factor > 1.0)) throw std::invalid_argument("scale_factor must be > 1");

  std::vector<GrayImage> pyramid;
  pyramid.push_back(img);
  for (int k = 1; k < levels; ++k) {
    const double factor = std::pow(scale_factor, k);
    const int w = static_cast<int>(std::lround(img.width() / factor));
    const int h = static_cast<int>(std::lround(img.height() / factor));
    if (std::min(w, h) < min_dim || w < 1 || h < 1) {
      break;  // this level and everything smaller is dropped
    }
    pyramid.push_back(resize_bilinear(pyramid.back(), w, h));
  }
  return pyramid;
}

std::vector<std::uint8_t> fast_corner_mask(const GrayImage& img, int threshold) {
  if (threshold <= 0) throw std::invalid_argument("threshold must be > 0");
  std::vector<std::uint8_t> mask(img.pixel_count(), 0);
  for (int y = 3; y < img.height() - 3; ++y) {
    for (int x = 3; x < img.width() - 3; ++x) {
      if (is_segment_corner(img, x, y, threshold)) {
        mask[static_cast<std::size_t>(y) * img.width() + x] = 1;
      }
    }
  }
  return mask;
}

std::vector<Keypoint> detect_fast(const GrayImage& img, int threshold, int max_keypoints) {
  if (threshold <= 0) throw std::invalid_argument("threshold must be > 0");
  if (max_keypoints < 0) throw std::invalid_argument("max_keypoints must be >= 0");
  if (max_keypoints == 0 || img.width() < 7 || img.height() < 7) {
    return {};
  }

  const int width = img.width();
  const int height = img.height();

  // Scores for every segment-test corner; 0 elsewhere.
  std::vector<int> score(img.pixel_count(), 0);
  for (int y = 3; y < height - 3; ++y) {
    for (int x = 3; x < width - 3; ++x) {
      if (is_segment_corner(img, x, y, threshold)) {
        score[static_cast<std::size_t>(y) * width + x] = fast_score(img, x, y, threshold);
      }
    }
  }

  // 3x3 non-maximum suppression; score ties keep the first pixel in scan
  // order so the result does not depend on traversal details.
  std::vector<Keypoint> corners;
  for (int y = 3; y < height - 3; ++y) {
    for (int x = 3; x < width - 3; ++x) {
      const int sc = score[static_cast<std::size_t>(y) * width + x];
      if (sc == 0) continue;
      bool is_max = true;
      for (int v = -1; v <= 1 && is_max; ++v) {
        for (int u = -1; u <= 1 && is_max; ++u) {
          if (u == 0 && v == 0) continue;
          const int nsc = score[static_cast<std::size_t>(y + v) * width + (x + u)];
          if (nsc > sc || (nsc == sc && (v < 0 || (v == 0 && u < 0)))) {
            is_max = false;
          }
        }
      }
      if (is_max) {
        Keypoint kp;
        kp.x = static_cast<float>(x);
        kp.y = static_cast<float>(y);
        kp.response = static_cast<float>(harris_response(img, x, y));
        corners.push_back(kp);
      }
    }
  }

  std::sort(corners.begin(), corners.end(), [](const Keypoint& a, const Keypoint& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  if (corners.size() > static_cast<std::size_t>(max_keypoints)) {
    corners.resize(static_cast<std::size_t>(max_keypoints));
  }
  return corners;
}

double keypoint_orientation(const GrayImage& img, const Keypoint& kp, int radius) {
  if (radius < 1) throw std::invalid_argument("radius must be >= 1");
  const int cx = static_cast<int>(std::lround(kp.x));
  const int cy = static_cast<int>(std::lround(kp.y));
  const int r2 = radius * radius;

  long long m10 = 0;
  long long m01 = 0;
  for (int v = -radius; v <= radius; ++v) {
    for (int u = -radius; u <= radius; ++u) {
      if (u * u + v * v > r2) continue;
      const int intensity = img.at_clamped(cx + u, cy + v);
      m10 += static_cast<long long>(u) * intensity;
      m01 += static_cast<long long>(v) * intensity;
    }
  }

  double deg = std::atan2(static_cast<double>(m01), static_cast<double>(m10)) * 180.0 /
               std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg = 0.0;
  return deg;
}

Descriptor256 describe(const GrayImage& img, const Keypoint& kp, const OrbParams& params) {
  validate_orb_params(params);
  const std::array<PatternPair, 256> pattern =
      sampling_pattern(params.pattern_seed, params.patch_size);
  return describe_with_pattern(img, kp, pattern, params.patch_size);
}

FeatureSet extract(const GrayImage& img, const OrbParams& params) {
  validate_orb_params(params);
  FeatureSet features;
  if (img.empty()) {
    return features;
  }

  const std::vector<GrayImage> pyramid =
      build_pyramid(img, params.pyramid_levels, params.scale_factor, params.patch_size);
  const std::array<PatternPair, 256> pattern =
      sampling_pattern(params.pattern_seed, params.patch_size);
  const int margin = descriptor_margin(params.patch_size);
  const int half_patch = params.patch_size / 2;

  // Feature budget per level, proportional to pixel count; the rounding
  // remainder goes to level 0.
  double total_area = 0.0;
  for (const GrayImage& level : pyramid) {
    total_area += static_cast<double>(level.pixel_count());
  }
  std::vector<int> budget(pyramid.size(), 0);
  int assigned = 0;
  for (std::size_t k = 0; k < pyramid.size(); ++k) {
    budget[k] = static_cast<int>(params.max_features * pyramid[k].pixel_count() / total_area);
    assigned += budget[k];
  }
  budget[0] += params.max_features - assigned;

  for (std::size_t k = 0; k < pyramid.size(); ++k) {
    const GrayImage& level = pyramid[k];
    if (budget[k] <= 0) continue;
    if (level.width() <= 2 * margin || level.height() <= 2 * margin) continue;

    std::vector<Keypoint> corners =
        detect_fast(level, params.fast_threshold, std::numeric_limits<int>::max());

    const double scale = std::pow(params.scale_factor, static_cast<double>(k));
    int taken = 0;
    for (const Keypoint& corner : corners) {
      if (taken >= budget[k]) break;
      const int x = static_cast<int>(corner.x);
      const int y = static_cast<int>(corner.y);
      if (x < margin || y < margin || x > level.width() - 1 - margin ||
          y > level.height() - 1 - margin) {
        continue;
      }
      Keypoint kp = corner;
      kp.level = static_cast<int>(k);
      kp.angle_deg = static_cast<float>(keypoint_orientation(level, kp, half_patch));
      const Descriptor256 desc = describe_with_pattern(level, kp, pattern, params.patch_size);
      kp.x = static_cast<float>(x * scale);
      kp.y = static_cast<float>(y * scale);
      features.keypoints.push_back(kp);
      features.descriptors.push_back(desc);
      ++taken;
    }
  }
  return features;
}

}  // namespace tamperlens
