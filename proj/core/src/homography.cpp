#include "tamperlens/homography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tamperlens/errors.hpp"

namespace tamperlens {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat9 = std::array<std::array<double, 9>, 9>;

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  }
  return r;
}

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Cyclic Jacobi eigensolver for a symmetric 9x9 matrix. Eigenvectors come
// back as columns of v. Plenty for the DLT normal equations; no external
// linear-algebra dependency needed.
void jacobi_eigen(Mat9 a, Mat9& v, std::array<double, 9>& eigenvalues) {
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 9; ++p) {
      for (int q = p + 1; q < 9; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-28) break;

    for (int p = 0; p < 9; ++p) {
      for (int q = p + 1; q < 9; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < 9; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 9; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 9; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  for (int i = 0; i < 9; ++i) eigenvalues[i] = a[i][i];
}

struct Normalization {
  Mat3 transform;      // maps raw points to normalized points
  Mat3 inverse;        // and back
};

// Hartley normalization: centroid to the origin, RMS distance sqrt(2).
Normalization normalize_points(std::span<const Correspondence> pairs, bool first) {
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(pairs.size());
  for (const Correspondence& p : pairs) {
    mx += first ? p.x1 : p.x2;
    my += first ? p.y1 : p.y2;
  }
  mx /= n;
  my /= n;

  double rms = 0.0;
  for (const Correspondence& p : pairs) {
    const double dx = (first ? p.x1 : p.x2) - mx;
    const double dy = (first ? p.y1 : p.y2) - my;
    rms += dx * dx + dy * dy;
  }
  rms = std::sqrt(rms / n);
  if (rms < 1e-12) {
    throw EstimationError(EstimationError::Kind::Degenerate, "point set collapses to one point");
  }
  const double s = std::numbers::sqrt2 / rms;

  Normalization norm;
  norm.transform = {{{s, 0.0, -s * mx}, {0.0, s, -s * my}, {0.0, 0.0, 1.0}}};
  norm.inverse = {{{1.0 / s, 0.0, mx}, {0.0, 1.0 / s, my}, {0.0, 0.0, 1.0}}};
  return norm;
}

bool triple_collinear(double ax, double ay, double bx, double by, double cx, double cy,
                      double scale) {
  const double cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return std::abs(cross) <= 1e-9 * scale * scale + 1e-12;
}

// Any 3 of the 4 source points collinear (within tolerance)?
bool sample_degenerate(const Correspondence& a, const Correspondence& b, const Correspondence& c,
                       const Correspondence& d) {
  double scale = 0.0;
  const Correspondence* pts[4] = {&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      scale = std::max(scale, std::abs(pts[i]->x1 - pts[j]->x1));
      scale = std::max(scale, std::abs(pts[i]->y1 - pts[j]->y1));
    }
  }
  for (int skip = 0; skip < 4; ++skip) {
    const Correspondence* t[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != skip) t[n++] = pts[i];
    }
    if (triple_collinear(t[0]->x1, t[0]->y1, t[1]->x1, t[1]->y1, t[2]->x1, t[2]->y1, scale)) {
      return true;
    }
  }
  return false;
}

Homography normalize_representation(Mat3 h) {
  if (std::abs(h[2][2]) > 1e-12) {
    const double inv = 1.0 / h[2][2];
    for (auto& row : h) {
      for (double& value : row) value *= inv;
    }
  } else {
    double norm = 0.0;
    for (const auto& row : h) {
      for (double value : row) norm += value * value;
    }
    norm = std::sqrt(norm);
    double first_nonzero = 0.0;
    for (const auto& row : h) {
      for (double value : row) {
        if (first_nonzero == 0.0 && std::abs(value) > 1e-15) {
          first_nonzero = value;
          break;
        }
      }
      if (first_nonzero != 0.0) break;
    }
    const double sign = first_nonzero < 0.0 ? -1.0 : 1.0;
    for (auto& row : h) {
      for (double& value : row) value = value * sign / norm;
    }
  }
  return Homography{h};
}

}  // namespace

Homography Homography::identity() {
  return Homography{{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}};
}

std::array<double, 3> Homography::project(double x, double y) const {
  return {h[0][0] * x + h[0][1] * y + h[0][2],
          h[1][0] * x + h[1][1] * y + h[1][2],
          h[2][0] * x + h[2][1] * y + h[2][2]};
}

Homography dlt_homography(std::span<const Correspondence> pairs) {
  const std::size_t n = pairs.size();
  if (n < 4) {
    throw EstimationError(EstimationError::Kind::TooFewPairs,
                          "homography estimation needs at least 4 correspondences");
  }
  if (n == 4 && sample_degenerate(pairs[0], pairs[1], pairs[2], pairs[3])) {
    throw EstimationError(EstimationError::Kind::Degenerate,
                          "3 of the 4 source points are collinear");
  }

  const Normalization n1 = normalize_points(pairs, true);
  const Normalization n2 = normalize_points(pairs, false);

  // Accumulate A^T A for the 2n x 9 DLT system directly.
  Mat9 m{};
  for (const Correspondence& pair : pairs) {
    const double x = n1.transform[0][0] * pair.x1 + n1.transform[0][2];
    const double y = n1.transform[1][1] * pair.y1 + n1.transform[1][2];
    const double u = n2.transform[0][0] * pair.x2 + n2.transform[0][2];
    const double v = n2.transform[1][1] * pair.y2 + n2.transform[1][2];

    const double row1[9] = {0, 0, 0, -x, -y, -1, v * x, v * y, v};
    const double row2[9] = {x, y, 1, 0, 0, 0, -u * x, -u * y, -u};
    for (int i = 0; i < 9; ++i) {
      for (int j = i; j < 9; ++j) {
        m[i][j] += row1[i] * row1[j] + row2[i] * row2[j];
      }
    }
  }
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < i; ++j) m[i][j] = m[j][i];
  }

  Mat9 vectors;
  std::array<double, 9> eigenvalues;
  jacobi_eigen(m, vectors, eigenvalues);

  int smallest = 0;
  for (int i = 1; i < 9; ++i) {
    if (eigenvalues[i] < eigenvalues[smallest]) smallest = i;
  }

  const Mat3 h_norm = {{{vectors[0][smallest], vectors[1][smallest], vectors[2][smallest]},
                        {vectors[3][smallest], vectors[4][smallest], vectors[5][smallest]},
                        {vectors[6][smallest], vectors[7][smallest], vectors[8][smallest]}}};

  const Homography result = normalize_representation(mat3_mul(n2.inverse, mat3_mul(h_norm, n1.transform)));
  if (std::abs(det3(result.h)) < 1e-9) {
    throw EstimationError(EstimationError::Kind::Degenerate, "estimated homography is singular");
  }
  return result;
}

double reprojection_error(const Homography& h, const Correspondence& pair) {
  const std::array<double, 3> p = h.project(pair.x1, pair.y1);
  if (std::abs(p[2]) < 1e-12) {
    return std::numeric_limits<double>::infinity();
  }
  const double dx = p[0] / p[2] - pair.x2;
  const double dy = p[1] / p[2] - pair.y2;
  return std::sqrt(dx * dx + dy * dy);
}

RansacResult ransac_homography(std::span<const Correspondence> pairs, const RansacParams& params) {
  const std::size_t n = pairs.size();
  if (n < 4) {
    throw EstimationError(EstimationError::Kind::TooFewPairs,
                          "RANSAC needs at least 4 correspondences");
  }
  if (params.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(params.inlier_threshold > 0.0)) {
    throw std::invalid_argument("inlier_threshold must be > 0");
  }

  std::mt19937 rng(params.rng_seed);
  // Index draws use modulo reduction on the raw engine output so the
  // sampling sequence is identical on every platform.
  auto draw_index = [&rng, n]() { return static_cast<std::size_t>(rng() % n); };

  std::vector<std::size_t> best_inliers;
  Homography best_model = Homography::identity();
  bool have_model = false;
  bool all_degenerate = true;

  for (int iteration = 0; iteration < params.max_iterations; ++iteration) {
    std::size_t idx[4];
    for (int i = 0; i < 4; ++i) {
      while (true) {
        const std::size_t candidate = draw_index();
        bool duplicate = false;
        for (int j = 0; j < i; ++j) duplicate |= (idx[j] == candidate);
        if (!duplicate) {
          idx[i] = candidate;
          break;
        }
      }
    }

    const Correspondence sample[4] = {pairs[idx[0]], pairs[idx[1]], pairs[idx[2]], pairs[idx[3]]};
    if (sample_degenerate(sample[0], sample[1], sample[2], sample[3])) {
      continue;
    }

    Homography model;
    try {
      model = dlt_homography(std::span<const Correspondence>(sample, 4));
    } catch (const EstimationError&) {
      continue;
    }
    all_degenerate = false;

    std::vector<std::size_t> inliers;
    for (std::size_t i = 0; i < n; ++i) {
      if (reprojection_error(model, pairs[i]) <= params.inlier_threshold) {
        inliers.push_back(i);
      }
    }
    if (inliers.size() > best_inliers.size()) {
      best_inliers = std::move(inliers);
      best_model = model;
      have_model = true;
    }
  }

  const std::size_t required = static_cast<std::size_t>(std::max(4, params.min_inliers));
  if (!have_model || best_inliers.size() < required) {
    if (all_degenerate) {
      throw EstimationError(EstimationError::Kind::Degenerate,
                            "every minimal sample was degenerate");
    }
    throw EstimationError(EstimationError::Kind::NoConsensus,
                          "no model reached the required inlier count");
  }

  // Refit on all inliers of the winning sample model; if that refit is
  // itself degenerate, keep the sample model.
  std::vector<Correspondence> inlier_pairs;
  inlier_pairs.reserve(best_inliers.size());
  for (std::size_t i : best_inliers) inlier_pairs.push_back(pairs[i]);
  Homography refit = best_model;
  try {
    refit = dlt_homography(inlier_pairs);
  } catch (const EstimationError&) {
  }
  return {refit, std::move(best_inliers)};
}

double rotation_angle(const Homography& h) {
  Mat3 m = h.h;
  if (m[2][2] < 0.0) {
    for (auto& row : m) {
      for (double& value : row) value = -value;
    }
  }
  const double trace = m[0][0] + m[1][1];
  const double skew = m[1][0] - m[0][1];
  if (std::abs(trace) < 1e-12 && std::abs(skew) < 1e-12) {
    throw EstimationError(EstimationError::Kind::UndefinedAngle,
                          "rotation angle undefined for this matrix");
  }
  double deg = std::atan2(skew, trace) * 180.0 / std::numbers::pi;
  if (deg <= -180.0) deg += 360.0;
  return deg;
}

}  // namespace tamperlens
