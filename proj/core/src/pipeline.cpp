#include "tamperlens/pipeline.hpp"

#include <cmath>
#include <string>

#include "tamperlens/errors.hpp"
#include "tamperlens/matching.hpp"
#include "tamperlens/metrics.hpp"

namespace tamperlens {

std::string_view label_name(TamperLabel label) {
  switch (label) {
    case TamperLabel::normal: return "normal";
    case TamperLabel::blurred: return "blurred";
    case TamperLabel::rotated: return "rotated";
    case TamperLabel::obstructed: return "obstructed";
  }
  return "unknown";
}

TamperLabel parse_label(std::string_view name) {
  if (name == "normal") return TamperLabel::normal;
  if (name == "blurred") return TamperLabel::blurred;
  if (name == "rotated") return TamperLabel::rotated;
  if (name == "obstructed") return TamperLabel::obstructed;
  throw SchemaError("unknown label: " + std::string(name));
}

void validate_profile(const CalibrationProfile& profile) {
  if (profile.version != 1) {
    throw SchemaError("unsupported profile version: " + std::to_string(profile.version));
  }
  if (profile.references.size() < 2) {
    throw SchemaError("profile needs at least 2 references, has " +
                      std::to_string(profile.references.size()));
  }
  if (profile.match_count_min < 1) {
    throw SchemaError("match_count_min must be >= 1");
  }
  if (!(profile.rotation_limit_deg > 0.0)) {
    throw SchemaError("rotation_limit_deg must be > 0");
  }
  if (profile.match.good_distance_max < 0 || profile.match.good_distance_max > 256) {
    throw SchemaError("good_distance_max must be in [0, 256]");
  }
  for (const ReferenceEntry& ref : profile.references) {
    if (ref.features.empty()) {
      throw SchemaError("reference '" + ref.name + "' has an empty feature set");
    }
    if (ref.features.keypoints.size() != ref.features.descriptors.size()) {
      throw SchemaError("reference '" + ref.name + "' has mismatched keypoints/descriptors");
    }
  }
}

CalibrationProfile calibrate(std::span<const NamedImage> refs, const CalibrationConfig& config) {
  if (refs.size() < 2) {
    throw CalibrationError("calibration needs at least 2 reference images, got " +
                           std::to_string(refs.size()));
  }

  std::vector<ReferenceEntry> entries;
  entries.reserve(refs.size());
  for (const NamedImage& ref : refs) {
    ReferenceEntry entry;
    entry.name = ref.name;
    entry.features = extract(ref.image, config.orb);
    if (entry.features.size() < static_cast<std::size_t>(config.min_ref_features)) {
      throw CalibrationError("reference '" + ref.name + "' yields only " +
                             std::to_string(entry.features.size()) + " features (need " +
                             std::to_string(config.min_ref_features) + ")");
    }
    entry.sharpness = laplacian_variance(ref.image);
    entries.push_back(std::move(entry));
  }

  // Worst agreement between normal references drives the match threshold.
  int min_pair_count = -1;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (i == j) continue;
      const int count =
          good_match_count(entries[i].features, entries[j].features, config.match);
      if (count == 0) {
        throw CalibrationError("references '" + entries[i].name + "' and '" + entries[j].name +
                               "' share no good matches; reference set is inconsistent");
      }
      if (min_pair_count < 0 || count < min_pair_count) {
        min_pair_count = count;
      }
    }
  }

  double min_sharpness = entries.front().sharpness;
  for (const ReferenceEntry& entry : entries) {
    min_sharpness = std::min(min_sharpness, entry.sharpness);
  }

  CalibrationProfile profile;
  profile.version = 1;
  profile.orb = config.orb;
  profile.match = config.match;
  profile.ransac = config.ransac;
  profile.quality.blur_sharpness_min = config.gamma * min_sharpness;
  profile.quality.noimage_std_min = config.noimage_std_min;
  profile.match_count_min =
      std::max(static_cast<int>(std::floor(config.beta * min_pair_count)), config.match_floor);
  profile.rotation_limit_deg = config.rotation_limit_deg;
  profile.references = std::move(entries);
  validate_profile(profile);
  return profile;
}

Classification classify(const GrayImage& img, const CalibrationProfile& profile) {
  validate_profile(profile);

  Classification out;
  out.std_dev = intensity_std(img);
  // Frames too small for the Laplacian window count as having no sharpness.
  out.sharpness =
      (img.width() >= 3 && img.height() >= 3) ? laplacian_variance(img) : 0.0;

  const FeatureSet features = extract(img, profile.orb);

  int best_count = -1;
  std::size_t best_ref = 0;
  for (std::size_t i = 0; i < profile.references.size(); ++i) {
    const int count = good_match_count(features, profile.references[i].features, profile.match);
    if (count > best_count) {  // ties go to the first reference
      best_count = count;
      best_ref = i;
    }
  }
  out.good_matches = best_count;
  out.best_ref = profile.references[best_ref].name;

  if (best_count < profile.match_count_min) {
    out.decision_path.push_back(rules::kLowMatches);
    // A frame with no intensity spread carries no signal at all, so the
    // uniformity test runs before the sharpness test; a zero-variance frame
    // is an obstructed/no-image case, not a blurred one.
    if (out.std_dev < profile.quality.noimage_std_min) {
      out.decision_path.push_back(rules::kLowStd);
      out.label = TamperLabel::obstructed;
    } else if (out.sharpness < profile.quality.blur_sharpness_min) {
      out.decision_path.push_back(rules::kLowSharpness);
      out.label = TamperLabel::blurred;
    } else {
      out.decision_path.push_back(rules::kAbnormalFallback);
      out.label = TamperLabel::obstructed;
    }
    return out;
  }

  out.decision_path.push_back(rules::kMatchesOk);
  const std::vector<Match> matches =
      good_matches(features, profile.references[best_ref].features, profile.match);
  std::vector<Correspondence> pairs;
  pairs.reserve(matches.size());
  for (const Match& m : matches) {
    const Keypoint& test_kp = features.keypoints[m.query_idx];
    const Keypoint& ref_kp = profile.references[best_ref].features.keypoints[m.train_idx];
    pairs.push_back({test_kp.x, test_kp.y, ref_kp.x, ref_kp.y});
  }

  try {
    const RansacResult fit = ransac_homography(pairs, profile.ransac);
    const double angle = rotation_angle(fit.model);
    out.rotation_deg = angle;
    if (std::abs(angle) > profile.rotation_limit_deg) {
      out.decision_path.push_back(rules::kRotationExceeds);
      out.label = TamperLabel::rotated;
    } else {
      out.decision_path.push_back(rules::kRotationOk);
      out.label = TamperLabel::normal;
    }
  } catch (const EstimationError&) {
    // A frame that matches references but yields no consistent geometry is
    // treated as obstructed; a live pipeline must always emit a label.
    out.decision_path.push_back(rules::kRansacFailed);
    out.label = TamperLabel::obstructed;
  }
  return out;
}

}  // namespace tamperlens
