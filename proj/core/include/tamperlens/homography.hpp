#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tamperlens {

// 3x3 projective transform. Stored normalized: scaled so h[2][2] == 1 when
// |h[2][2]| > 1e-12, otherwise unit Frobenius norm with positive first
// nonzero entry.
struct Homography {
  std::array<std::array<double, 3>, 3> h{};

  static Homography identity();

  // Projects (x, y, 1); returns the homogeneous triple (u, v, w).
  std::array<double, 3> project(double x, double y) const;

  friend bool operator==(const Homography&, const Homography&) = default;
};

struct RansacParams {
  int max_iterations = 1000;
  double inlier_threshold = 3.0;  // px reprojection
  int min_inliers = 10;
  std::uint32_t rng_seed = 1234;

  friend bool operator==(const RansacParams&, const RansacParams&) = default;
};

// (x1, y1) in the test image, (x2, y2) in the reference image.
struct Correspondence {
  double x1, y1;
  double x2, y2;
};

// Hartley-normalized direct linear transform mapping (x1,y1) -> (x2,y2).
// Both point sets are translated/scaled to centroid 0 and RMS distance
// sqrt(2); the homogeneous system is solved by the smallest eigenvector of
// A^T A (9x9 Jacobi eigensolver). Requires >= 4 pairs; throws
// EstimationError for degenerate configurations (collinear or coincident
// source points, singular result).
Homography dlt_homography(std::span<const Correspondence> pairs);

// Euclidean distance between the projected (x1,y1) and (x2,y2). Points
// projected to infinity (|w| ~ 0) yield +infinity so they always count as
// outliers.
double reprojection_error(const Homography& h, const Correspondence& pair);

struct RansacResult {
  Homography model;                  // refit on all inliers of the best sample
  std::vector<std::size_t> inliers;  // indices supporting the best sample model
};

// Seeded, deterministic RANSAC: max_iterations minimal samples of 4 distinct
// pairs (degenerate samples skipped), inliers counted at
// reprojection_error <= inlier_threshold, largest inlier set kept (first
// found wins ties), final model refit on all inliers. Throws
// EstimationError when fewer than 4 pairs are given or no model reaches
// max(4, min_inliers) inliers.
RansacResult ransac_homography(std::span<const Correspondence> pairs, const RansacParams& params);

// Rotation of the closest orthogonal matrix to the upper-left 2x2 block
// (polar decomposition): atan2(h10 - h01, h00 + h11) in degrees, range
// (-180, 180]. The matrix sign is first fixed so h[2][2] > 0. Throws
// EstimationError when both atan2 arguments vanish.
double rotation_angle(const Homography& h);

}  // namespace tamperlens
