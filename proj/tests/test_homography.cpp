#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "support/fixtures.hpp"
#include "tamperlens/errors.hpp"
#include "tamperlens/homography.hpp"

using namespace tamperlens;

namespace {

Correspondence map_through(const Homography& h, double x, double y) {
  const auto p = h.project(x, y);
  return {x, y, p[0] / p[2], p[1] / p[2]};
}

Homography rotation_about(double theta_deg, double cx, double cy, double scale = 1.0) {
  const double rad = theta_deg * std::numbers::pi / 180.0;
  const double c = scale * std::cos(rad);
  const double s = scale * std::sin(rad);
  Homography h = Homography::identity();
  h.h[0][0] = c;
  h.h[0][1] = -s;
  h.h[0][2] = cx - c * cx + s * cy;
  h.h[1][0] = s;
  h.h[1][1] = c;
  h.h[1][2] = cy - s * cx - c * cy;
  return h;
}

std::vector<Correspondence> pairs_from(const Homography& h, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Correspondence> pairs;
  for (int i = 0; i < count; ++i) {
    const double x = fixtures::uniform01(rng) * 320.0;
    const double y = fixtures::uniform01(rng) * 240.0;
    pairs.push_back(map_through(h, x, y));
  }
  return pairs;
}

double max_reprojection(const Homography& h, const std::vector<Correspondence>& pairs) {
  double worst = 0.0;
  for (const Correspondence& p : pairs) {
    worst = std::max(worst, reprojection_error(h, p));
  }
  return worst;
}

}  // namespace

TEST_CASE("dlt_homography recovers the identity from fixed points") {
  const std::vector<Correspondence> square = {
      {0, 0, 0, 0}, {1, 0, 1, 0}, {1, 1, 1, 1}, {0, 1, 0, 1}};
  const Homography h = dlt_homography(square);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(h.h[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("dlt_homography recovers a pure translation") {
  const std::vector<Correspondence> square = {
      {0, 0, 5, -3}, {1, 0, 6, -3}, {1, 1, 6, -2}, {0, 1, 5, -2}};
  const Homography h = dlt_homography(square);
  CHECK(h.h[0][2] == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(h.h[1][2] == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(h.h[0][0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(h.h[0][1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(h.h[2][2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dlt_homography reaches 1e-6 reprojection on noise-free data") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const double theta = (fixtures::uniform01(rng) - 0.5) * 90.0;
    const double scale = 0.8 + fixtures::uniform01(rng) * 0.6;
    Homography truth = rotation_about(theta, 160.0, 120.0, scale);
    truth.h[0][2] += (fixtures::uniform01(rng) - 0.5) * 40.0;
    truth.h[1][2] += (fixtures::uniform01(rng) - 0.5) * 40.0;
    truth.h[2][0] = (fixtures::uniform01(rng) - 0.5) * 2e-4;
    truth.h[2][1] = (fixtures::uniform01(rng) - 0.5) * 2e-4;

    const auto pairs = pairs_from(truth, 20, 700 + trial);
    const Homography fit = dlt_homography(pairs);
    CHECK(max_reprojection(fit, pairs) < 1e-6);
  }
}

TEST_CASE("dlt_homography rejects degenerate configurations") {
  // Three collinear source points.
  const std::vector<Correspondence> collinear = {
      {0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}, {0, 1, 0, 1}};
  try {
    dlt_homography(collinear);
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::Degenerate);
  }

  // Coincident points collapse the normalization.
  const std::vector<Correspondence> coincident(4, Correspondence{2, 2, 3, 3});
  CHECK_THROWS_AS(dlt_homography(coincident), EstimationError);

  // Too few pairs.
  const std::vector<Correspondence> three = {{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}};
  try {
    dlt_homography(three);
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::TooFewPairs);
  }
}

TEST_CASE("reprojection_error basics") {
  const Homography id = Homography::identity();
  CHECK(reprojection_error(id, {4, 9, 4, 9}) == 0.0);
  CHECK(reprojection_error(id, {0, 0, 3, 4}) == doctest::Approx(5.0));

  Homography shift = Homography::identity();
  shift.h[0][2] = 5.0;
  CHECK(reprojection_error(shift, {0, 0, 5, 0}) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("reprojection_error treats points at infinity as outliers") {
  Homography h = Homography::identity();
  h.h[2][0] = 1.0;
  h.h[2][2] = 0.0;  // w = x, so x = 0 projects to infinity
  // Representation stays as given here; reprojection must not divide by ~0.
  CHECK(std::isinf(reprojection_error(h, {0.0, 1.0, 10.0, 10.0})));
}

TEST_CASE("ransac_homography recovers a rotation from clean pairs") {
  const Homography truth = rotation_about(30.0, 160.0, 120.0);
  const auto pairs = pairs_from(truth, 50, 42);
  const RansacResult fit = ransac_homography(pairs, RansacParams{});
  CHECK(fit.inliers.size() == 50);
  CHECK(std::abs(rotation_angle(fit.model) - 30.0) <= 0.1);
}

TEST_CASE("ransac_homography tolerates 30 percent outliers") {
  const Homography truth = rotation_about(30.0, 160.0, 120.0);
  auto pairs = pairs_from(truth, 50, 43);
  std::mt19937 rng(97);
  for (int i = 0; i < 21; ++i) {
    pairs.push_back({fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0,
                     fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0});
  }
  const RansacResult fit = ransac_homography(pairs, RansacParams{});
  CHECK(fit.inliers.size() >= 50);
  CHECK(std::abs(rotation_angle(fit.model) - 30.0) <= 0.5);
}

TEST_CASE("ransac_homography flags an all-degenerate input") {
  const std::vector<Correspondence> collinear = {
      {0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}, {0, 1, 0, 1}};
  try {
    ransac_homography(collinear, RansacParams{});
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::Degenerate);
  }
}

TEST_CASE("ransac_homography needs at least 4 pairs") {
  const std::vector<Correspondence> three = {{0, 0, 0, 0}, {9, 0, 9, 0}, {0, 9, 0, 9}};
  try {
    ransac_homography(three, RansacParams{});
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::TooFewPairs);
  }
}

TEST_CASE("ransac_homography reports no consensus on structureless data") {
  std::mt19937 rng(5);
  std::vector<Correspondence> pairs;
  for (int i = 0; i < 40; ++i) {
    pairs.push_back({fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0,
                     fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0});
  }
  RansacParams params;
  params.min_inliers = 30;
  try {
    ransac_homography(pairs, params);
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::NoConsensus);
  }
}

TEST_CASE("ransac_homography is deterministic for a fixed seed") {
  const Homography truth = rotation_about(12.0, 100.0, 80.0);
  auto pairs = pairs_from(truth, 30, 44);
  std::mt19937 rng(3);
  for (int i = 0; i < 8; ++i) {
    pairs.push_back({fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0,
                     fixtures::uniform01(rng) * 320.0, fixtures::uniform01(rng) * 240.0});
  }
  const RansacResult a = ransac_homography(pairs, RansacParams{});
  const RansacResult b = ransac_homography(pairs, RansacParams{});
  CHECK(a.model == b.model);
  CHECK(a.inliers == b.inliers);
}

TEST_CASE("refit model keeps the median inlier error within the threshold") {
  const Homography truth = rotation_about(20.0, 160.0, 120.0);
  auto pairs = pairs_from(truth, 60, 46);
  // Mild coordinate noise.
  std::mt19937 rng(77);
  for (Correspondence& p : pairs) {
    p.x2 += (fixtures::uniform01(rng) - 0.5) * 1.5;
    p.y2 += (fixtures::uniform01(rng) - 0.5) * 1.5;
  }
  const RansacResult fit = ransac_homography(pairs, RansacParams{});
  std::vector<double> errors;
  for (std::size_t idx : fit.inliers) {
    errors.push_back(reprojection_error(fit.model, pairs[idx]));
  }
  std::sort(errors.begin(), errors.end());
  CHECK(errors[errors.size() / 2] <= RansacParams{}.inlier_threshold);
}

TEST_CASE("rotation_angle reads pure rotations exactly") {
  CHECK(rotation_angle(Homography::identity()) == 0.0);
  const Homography r30 = rotation_about(30.0, 0.0, 0.0);
  CHECK(rotation_angle(r30) == doctest::Approx(30.0).epsilon(1e-12));
  const Homography rneg = rotation_about(-135.0, 10.0, 20.0);
  CHECK(rotation_angle(rneg) == doctest::Approx(-135.0).epsilon(1e-12));
}

TEST_CASE("rotation_angle is invariant under positive scaling") {
  Homography h = rotation_about(30.0, 0.0, 0.0);
  const double base = rotation_angle(h);
  for (double lambda : {0.25, 2.5, 40.0}) {
    Homography scaled = h;
    for (auto& row : scaled.h) {
      for (double& v : row) v *= lambda;
    }
    CHECK(rotation_angle(scaled) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("rotation_angle fixes the sign from h22 first") {
  Homography h = rotation_about(40.0, 0.0, 0.0);
  Homography negated = h;
  for (auto& row : negated.h) {
    for (double& v : row) v = -v;
  }
  CHECK(rotation_angle(negated) == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("rotation_angle with rotation plus isotropic scale stays exact") {
  const Homography h = rotation_about(70.0, 0.0, 0.0, 3.0);
  CHECK(rotation_angle(h) == doctest::Approx(70.0).epsilon(1e-12));
}

TEST_CASE("rotation_angle rejects the undefined case") {
  // Pure mirror: trace and skew both vanish.
  Homography mirror = Homography::identity();
  mirror.h[0][0] = 0.0;
  mirror.h[0][1] = 1.0;
  mirror.h[1][0] = 1.0;
  mirror.h[1][1] = 0.0;
  try {
    rotation_angle(mirror);
    FAIL("expected EstimationError");
  } catch (const EstimationError& e) {
    CHECK(e.kind() == EstimationError::Kind::UndefinedAngle);
  }
}
