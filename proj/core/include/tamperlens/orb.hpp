#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tamperlens/image.hpp"

namespace tamperlens {

// Detected corner. x/y are sub-pixel coordinates in the level-0 frame,
// level is the pyramid level the corner was found on, angle_deg the
// intensity-centroid orientation in [0, 360), response the Harris score
// used for ranking.
struct Keypoint {
  float x = 0.0f;
  float y = 0.0f;
  int level = 0;
  float angle_deg = 0.0f;
  float response = 0.0f;

  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

// 256 binary comparison outcomes packed as 32 bytes; bit i lives in
// bytes[i / 8] at position (i % 8), LSB first.
struct Descriptor256 {
  std::array<std::uint8_t, 32> bytes{};

  bool bit(int i) const { return (bytes[i >> 3] >> (i & 7)) & 1; }
  void set_bit(int i) { bytes[i >> 3] = static_cast<std::uint8_t>(bytes[i >> 3] | (1u << (i & 7))); }

  friend bool operator==(const Descriptor256&, const Descriptor256&) = default;
};

// Parallel keypoint/descriptor arrays; entry i describes keypoint i.
struct FeatureSet {
  std::vector<Keypoint> keypoints;
  std::vector<Descriptor256> descriptors;

  std::size_t size() const { return keypoints.size(); }
  bool empty() const { return keypoints.empty(); }

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

struct OrbParams {
  int max_features = 500;
  int pyramid_levels = 8;
  double scale_factor = 1.2;   // > 1
  int fast_threshold = 20;     // intensity units
  int patch_size = 31;         // odd, >= 15
  std::uint32_t pattern_seed = 42;

  friend bool operator==(const OrbParams&, const OrbParams&) = default;
};

// One BRIEF sampling pair: compare smoothed intensity at offset a against
// offset b, both relative to the keypoint and steered by its orientation.
struct PatternPair {
  int ax, ay, bx, by;
};

// Deterministic 256-pair sampling pattern: offsets drawn from an isotropic
// Gaussian with sigma = patch_size / 5 (sum-of-12-uniforms generator over a
// seeded mt19937, so the pattern is bit-identical across platforms),
// resampled until they fall inside the half-patch.
std::array<PatternPair, 256> sampling_pattern(std::uint32_t seed, int patch_size);

// Level 0 is the input. Level k has dimensions round(dim / scale_factor^k),
// produced by bilinear resampling of the previous level; levels whose
// smaller dimension drops below min_dim are dropped (level 0 is always
// kept).
std::vector<GrayImage> build_pyramid(const GrayImage& img, int levels, double scale_factor,
                                     int min_dim = 31);

// Segment-test corner mask, one byte per pixel, 1 where the pixel (at least
// 3 px from the border) has >= 9 contiguous pixels on its radius-3
// 16-pixel circle all brighter than center + threshold or all darker than
// center - threshold. No suppression applied.
std::vector<std::uint8_t> fast_corner_mask(const GrayImage& img, int threshold);

// Segment-test corners, non-maximum suppressed over the FAST score (the
// largest threshold at which the pixel stays a corner) in a 3x3
// neighborhood, ranked by Harris score, top max_keypoints kept.
std::vector<Keypoint> detect_fast(const GrayImage& img, int threshold, int max_keypoints);

// Intensity-centroid orientation: atan2(m01, m10) over the disc of the
// given radius centered on the keypoint, mapped to [0, 360). y grows
// downward. Samples outside the image are edge-replicated.
double keypoint_orientation(const GrayImage& img, const Keypoint& kp, int radius);

// Steered BRIEF: each sampling pair is rotated by the keypoint orientation;
// bit i is 1 iff the 5x5-box-smoothed intensity at the first offset is
// strictly less than at the second (ties give 0). Throws
// std::invalid_argument when the steered patch leaves the image.
Descriptor256 describe(const GrayImage& img, const Keypoint& kp, const OrbParams& params);

// Full pipeline: pyramid, per-level FAST with an area-proportional feature
// budget, Harris ranking, orientation, steered BRIEF. Keypoint coordinates
// are scaled back to the level-0 frame. Deterministic: identical inputs
// yield identical feature sets.
FeatureSet extract(const GrayImage& img, const OrbParams& params);

}  // namespace tamperlens
