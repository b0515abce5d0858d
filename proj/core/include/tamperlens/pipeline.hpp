#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tamperlens/homography.hpp"
#include "tamperlens/image.hpp"
#include "tamperlens/matching.hpp"
#include "tamperlens/metrics.hpp"
#include "tamperlens/orb.hpp"

namespace tamperlens {

enum class TamperLabel { normal, blurred, rotated, obstructed };

// Stable names: "normal", "blurred", "rotated", "obstructed".
std::string_view label_name(TamperLabel label);
TamperLabel parse_label(std::string_view name);  // throws SchemaError on unknown names

// Rule names recorded in Classification::decision_path, in the order the
// rules fired.
namespace rules {
inline constexpr const char* kLowMatches = "good_matches_below_threshold";
inline constexpr const char* kMatchesOk = "good_matches_at_threshold";
inline constexpr const char* kLowStd = "intensity_std_below_threshold";
inline constexpr const char* kLowSharpness = "sharpness_below_threshold";
inline constexpr const char* kAbnormalFallback = "abnormal_unmatched_fallback";
inline constexpr const char* kRotationExceeds = "rotation_above_limit";
inline constexpr const char* kRotationOk = "rotation_within_limit";
inline constexpr const char* kRansacFailed = "homography_no_consensus";
}  // namespace rules

// One calibration reference: extracted features plus the sharpness of the
// source frame.
struct ReferenceEntry {
  std::string name;
  FeatureSet features;
  double sharpness = 0.0;

  friend bool operator==(const ReferenceEntry&, const ReferenceEntry&) = default;
};

// Everything the classifier needs, persisted as JSON (see profile_json.hpp).
struct CalibrationProfile {
  int version = 1;
  OrbParams orb;
  MatchParams match;
  RansacParams ransac;
  QualityThresholds quality;
  int match_count_min = 1;
  double rotation_limit_deg = 50.0;
  std::vector<ReferenceEntry> references;

  friend bool operator==(const CalibrationProfile&, const CalibrationProfile&) = default;
};

// Throws SchemaError if the profile violates its invariants (< 2
// references, empty reference features, non-positive thresholds, ...).
void validate_profile(const CalibrationProfile& profile);

struct CalibrationConfig {
  OrbParams orb;
  MatchParams match;
  RansacParams ransac;
  double noimage_std_min = 10.0;
  double rotation_limit_deg = 50.0;
  // match_count_min = max(floor(beta * min pairwise good count), match_floor)
  double beta = 0.5;
  int match_floor = 10;
  // blur_sharpness_min = gamma * min reference Laplacian variance
  double gamma = 0.25;
  int min_ref_features = 30;
};

struct NamedImage {
  std::string name;
  GrayImage image;
};

// Derives all thresholds from normal reference frames: extracts features
// per reference, computes the good-match count for every ordered pair, and
// sets match_count_min and blur_sharpness_min from the worst observed
// agreement. Throws CalibrationError when fewer than 2 references are
// given, a reference yields fewer than min_ref_features features, or a
// reference pair shares no good matches at all.
CalibrationProfile calibrate(std::span<const NamedImage> refs, const CalibrationConfig& config);

struct Classification {
  TamperLabel label = TamperLabel::normal;
  std::string best_ref;
  int good_matches = 0;
  double sharpness = 0.0;
  double std_dev = 0.0;
  std::optional<double> rotation_deg;     // set iff the homography stage produced a model
  std::vector<std::string> decision_path;  // rule names, in firing order

  friend bool operator==(const Classification&, const Classification&) = default;
};

// The rule-based decision tree. Features are extracted from img and matched
// against every reference (best reference = highest good-match count, ties
// to the first). Below match_count_min the frame is abnormal: near-zero
// intensity spread means an obstructed/no-image frame, low sharpness means
// blurred, anything else falls back to obstructed. Otherwise the
// test-to-reference homography is estimated from the good matches and the
// frame is rotated when |rotation angle| exceeds rotation_limit_deg, normal
// otherwise. Never throws on image content; estimation failures fold into
// the obstructed label with decision-path evidence.
Classification classify(const GrayImage& img, const CalibrationProfile& profile);

}  // namespace tamperlens
