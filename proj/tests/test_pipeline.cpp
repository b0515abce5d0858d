#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/fixtures.hpp"
#include "tamperlens/errors.hpp"
#include "tamperlens/matching.hpp"
#include "tamperlens/metrics.hpp"
#include "tamperlens/pipeline.hpp"
#include "tamperlens/synth.hpp"

using namespace tamperlens;

namespace {

bool path_contains(const Classification& c, const char* rule) {
  return std::find(c.decision_path.begin(), c.decision_path.end(), rule) !=
         c.decision_path.end();
}

}  // namespace

TEST_CASE("calibrate derives the match threshold from the worst reference pair") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  REQUIRE(profile.references.size() == 8);

  // Recompute the pairwise minimum independently from the stored features.
  int min_count = -1;
  for (std::size_t i = 0; i < profile.references.size(); ++i) {
    for (std::size_t j = 0; j < profile.references.size(); ++j) {
      if (i == j) continue;
      const int count = good_match_count(profile.references[i].features,
                                         profile.references[j].features, profile.match);
      if (min_count < 0 || count < min_count) min_count = count;
    }
  }
  CHECK(profile.match_count_min ==
        std::max(static_cast<int>(std::floor(0.5 * min_count)), 10));

  double min_sharpness = profile.references[0].sharpness;
  for (const ReferenceEntry& ref : profile.references) {
    min_sharpness = std::min(min_sharpness, ref.sharpness);
  }
  CHECK(profile.quality.blur_sharpness_min == doctest::Approx(0.25 * min_sharpness));
}

TEST_CASE("calibrate refuses fewer than two references") {
  const std::vector<NamedImage> one = {{"only", fixtures::standard_fixture()}};
  CHECK_THROWS_AS(calibrate(one, CalibrationConfig{}), CalibrationError);
}

TEST_CASE("calibrate names a featureless reference") {
  std::vector<NamedImage> refs = fixtures::calibration_references();
  refs.push_back({"flat_gray", fixtures::uniform_image(320, 240, 128)});
  try {
    calibrate(refs, CalibrationConfig{});
    FAIL("expected CalibrationError");
  } catch (const CalibrationError& e) {
    CHECK(std::string(e.what()).find("flat_gray") != std::string::npos);
  }
}

TEST_CASE("calibrate refuses mutually inconsistent references") {
  // Mutual-nearest pairs between unrelated scenes sit dozens of bits apart;
  // under a tight budget they share no good matches at all.
  std::vector<NamedImage> refs = {{"scene_a", fixtures::textured(320, 240, 101)},
                                  {"scene_b", fixtures::textured(320, 240, 909)}};
  CalibrationConfig config;
  config.match.good_distance_max = 8;
  try {
    calibrate(refs, config);
    FAIL("expected CalibrationError");
  } catch (const CalibrationError& e) {
    CHECK(std::string(e.what()).find("scene_a") != std::string::npos);
    CHECK(std::string(e.what()).find("scene_b") != std::string::npos);
  }
}

TEST_CASE("every calibration reference classifies as normal under its own profile") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  for (const NamedImage& ref : fixtures::calibration_references()) {
    const Classification c = classify(ref.image, profile);
    CHECK(c.label == TamperLabel::normal);
    CHECK(c.good_matches >= profile.match_count_min);
    REQUIRE(c.rotation_deg.has_value());
    CHECK(std::abs(*c.rotation_deg) <= profile.rotation_limit_deg);
  }
}

TEST_CASE("a strongly blurred frame classifies as blurred") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const GrayImage blurred = gaussian_blur(fixtures::standard_fixture(), 4.0);
  const Classification c = classify(blurred, profile);

  // The two gate values behind the label.
  CHECK(c.good_matches < profile.match_count_min);
  CHECK(c.sharpness < profile.quality.blur_sharpness_min);
  CHECK(c.label == TamperLabel::blurred);
  CHECK(path_contains(c, rules::kLowMatches));
  CHECK(path_contains(c, rules::kLowSharpness));
}

TEST_CASE("a quarter-turned frame classifies as rotated with the right angle") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const Classification c = classify(rotate_image(fixtures::standard_fixture(), 90.0), profile);
  CHECK(c.label == TamperLabel::rotated);
  REQUIRE(c.rotation_deg.has_value());
  CHECK(std::abs(*c.rotation_deg - 90.0) <= 3.0);
  CHECK(path_contains(c, rules::kRotationExceeds));
}

TEST_CASE("a covered lens classifies as obstructed") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const Classification c = classify(obstruct(fixtures::standard_fixture(), 0, 1.0), profile);
  CHECK(c.label == TamperLabel::obstructed);
  CHECK(c.std_dev == 0.0);
  CHECK(path_contains(c, rules::kLowMatches));
  CHECK(path_contains(c, rules::kLowStd));
}

TEST_CASE("a sharp unfamiliar scene falls back to obstructed") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const Classification c = classify(fixtures::textured(320, 240, 555), profile);
  CHECK(c.label == TamperLabel::obstructed);
  CHECK(path_contains(c, rules::kLowMatches));
  CHECK(path_contains(c, rules::kAbnormalFallback));
  // Sharp and textured: neither secondary rule fires.
  CHECK(c.sharpness >= profile.quality.blur_sharpness_min);
  CHECK(c.std_dev >= profile.quality.noimage_std_min);
}

TEST_CASE("rotations beyond the limit are flagged, zero rotation is not") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const GrayImage& img = fixtures::standard_fixture();
  for (double theta : {60.0, 90.0, 120.0}) {
    const Classification c = classify(rotate_image(img, theta), profile);
    CHECK(c.label == TamperLabel::rotated);
  }
  CHECK(classify(rotate_image(img, 0.0), profile).label == TamperLabel::normal);
}

TEST_CASE("classification is a pure function of image and profile") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const GrayImage img = rotate_image(fixtures::standard_fixture(), 90.0);
  CHECK(classify(img, profile) == classify(img, profile));
}

TEST_CASE("raising the match threshold never moves frames out of the abnormal branch") {
  const CalibrationProfile& base = fixtures::standard_profile();
  CalibrationProfile strict = base;
  strict.match_count_min = base.match_count_min * 4;

  const GrayImage& fixture = fixtures::standard_fixture();
  const std::vector<GrayImage> frames = {
      fixture,
      brightness_jitter(fixture, 30),
      gaussian_blur(fixture, 4.0),
      rotate_image(fixture, 90.0),
      obstruct(fixture, 40, 1.0),
      fixtures::textured(320, 240, 321),
  };
  for (const GrayImage& frame : frames) {
    const Classification before = classify(frame, base);
    const Classification after = classify(frame, strict);
    const bool before_abnormal_branch = path_contains(before, rules::kLowMatches);
    const bool after_abnormal_branch = path_contains(after, rules::kLowMatches);
    if (before_abnormal_branch) {
      CHECK(after_abnormal_branch);  // the first gate is monotone
    }
  }
}

TEST_CASE("classify rejects an invalid profile") {
  CalibrationProfile broken = fixtures::standard_profile();
  broken.references.resize(1);
  CHECK_THROWS_AS(classify(fixtures::standard_fixture(), broken), SchemaError);
}
