#pragma once

#include <filesystem>
#include <string>

#include "tamperlens/evaluate.hpp"
#include "tamperlens/pipeline.hpp"

namespace tamperlens {

// Version-1 profile schema, keys emitted in this order so profiles are
// byte-stable and diffable:
//   version,
//   orb_params    {max_features, pyramid_levels, scale_factor,
//                  fast_threshold, patch_size, pattern_seed},
//   match_params  {good_distance_max, cross_check},
//   ransac_params {max_iterations, inlier_threshold, min_inliers, rng_seed},
//   quality       {blur_sharpness_min, noimage_std_min},
//   match_count_min, rotation_limit_deg,
//   references: [{name, sharpness,
//                 keypoints: [{x, y, level, angle_deg, response}],
//                 descriptors: [64-char lowercase hex, one per keypoint]}]
std::string profile_to_json(const CalibrationProfile& profile);

// Throws SchemaError for an unknown version, a missing field (named in the
// message), malformed JSON, or invariant violations.
CalibrationProfile profile_from_json(const std::string& text);

void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path);
CalibrationProfile load_profile(const std::filesystem::path& path);

// {path, label, best_ref, good_matches, sharpness, std_dev,
//  rotation_deg (null when absent), decision_path}
std::string classification_to_json(const std::string& path, const Classification& c);

// Full report including both confusion matrices, metric flags and timing.
std::string report_to_json(const EvalReport& report);

}  // namespace tamperlens
