#include "tamperlens/profile_json.hpp"

#include <fstream>

#include <json.hpp>

#include "tamperlens/errors.hpp"

namespace tamperlens {

namespace {

using json = nlohmann::ordered_json;

std::string descriptor_to_hex(const Descriptor256& d) {
  static const char* digits = "0123456789abcdef";
  std::string hex;
  hex.reserve(64);
  for (std::uint8_t byte : d.bytes) {
    hex.push_back(digits[byte >> 4]);
    hex.push_back(digits[byte & 0xF]);
  }
  return hex;
}

Descriptor256 descriptor_from_hex(const std::string& hex) {
  if (hex.size() != 64) {
    throw SchemaError("descriptor must be 64 hex characters, got " + std::to_string(hex.size()));
  }
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw SchemaError(std::string("invalid descriptor hex character: '") + c + "'");
  };
  Descriptor256 d;
  for (int i = 0; i < 32; ++i) {
    d.bytes[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return d;
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string("missing field: ") + key);
  }
  return *it;
}

template <typename T>
T field(const json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field has the wrong type: ") + key);
  }
}

}  // namespace

std::string profile_to_json(const CalibrationProfile& profile) {
  json j;
  j["version"] = profile.version;
  j["orb_params"] = {{"max_features", profile.orb.max_features},
                     {"pyramid_levels", profile.orb.pyramid_levels},
                     {"scale_factor", profile.orb.scale_factor},
                     {"fast_threshold", profile.orb.fast_threshold},
                     {"patch_size", profile.orb.patch_size},
                     {"pattern_seed", profile.orb.pattern_seed}};
  j["match_params"] = {{"good_distance_max", profile.match.good_distance_max},
                       {"cross_check", profile.match.cross_check}};
  j["ransac_params"] = {{"max_iterations", profile.ransac.max_iterations},
                        {"inlier_threshold", profile.ransac.inlier_threshold},
                        {"min_inliers", profile.ransac.min_inliers},
                        {"rng_seed", profile.ransac.rng_seed}};
  j["quality"] = {{"blur_sharpness_min", profile.quality.blur_sharpness_min},
                  {"noimage_std_min", profile.quality.noimage_std_min}};
  j["match_count_min"] = profile.match_count_min;
  j["rotation_limit_deg"] = profile.rotation_limit_deg;

  json refs = json::array();
  for (const ReferenceEntry& ref : profile.references) {
    json keypoints = json::array();
    json descriptors = json::array();
    for (std::size_t i = 0; i < ref.features.size(); ++i) {
      const Keypoint& kp = ref.features.keypoints[i];
      keypoints.push_back({{"x", kp.x},
                           {"y", kp.y},
                           {"level", kp.level},
                           {"angle_deg", kp.angle_deg},
                           {"response", kp.response}});
      descriptors.push_back(descriptor_to_hex(ref.features.descriptors[i]));
    }
    refs.push_back({{"name", ref.name},
                    {"sharpness", ref.sharpness},
                    {"keypoints", std::move(keypoints)},
                    {"descriptors", std::move(descriptors)}});
  }
  j["references"] = std::move(refs);
  return j.dump(2) + "\n";
}

CalibrationProfile profile_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed profile JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw SchemaError("profile JSON must be an object");
  }

  const int version = field<int>(j, "version");
  if (version != 1) {
    throw SchemaError("unsupported profile version: " + std::to_string(version));
  }

  CalibrationProfile profile;
  profile.version = version;

  const json& orb = require(j, "orb_params");
  profile.orb.max_features = field<int>(orb, "max_features");
  profile.orb.pyramid_levels = field<int>(orb, "pyramid_levels");
  profile.orb.scale_factor = field<double>(orb, "scale_factor");
  profile.orb.fast_threshold = field<int>(orb, "fast_threshold");
  profile.orb.patch_size = field<int>(orb, "patch_size");
  profile.orb.pattern_seed = field<std::uint32_t>(orb, "pattern_seed");

  const json& match = require(j, "match_params");
  profile.match.good_distance_max = field<int>(match, "good_distance_max");
  profile.match.cross_check = field<bool>(match, "cross_check");

  const json& ransac = require(j, "ransac_params");
  profile.ransac.max_iterations = field<int>(ransac, "max_iterations");
  profile.ransac.inlier_threshold = field<double>(ransac, "inlier_threshold");
  profile.ransac.min_inliers = field<int>(ransac, "min_inliers");
  profile.ransac.rng_seed = field<std::uint32_t>(ransac, "rng_seed");

  const json& quality = require(j, "quality");
  profile.quality.blur_sharpness_min = field<double>(quality, "blur_sharpness_min");
  profile.quality.noimage_std_min = field<double>(quality, "noimage_std_min");

  profile.match_count_min = field<int>(j, "match_count_min");
  profile.rotation_limit_deg = field<double>(j, "rotation_limit_deg");

  const json& refs = require(j, "references");
  if (!refs.is_array()) {
    throw SchemaError("references must be an array");
  }
  for (const json& r : refs) {
    ReferenceEntry entry;
    entry.name = field<std::string>(r, "name");
    entry.sharpness = field<double>(r, "sharpness");
    const json& keypoints = require(r, "keypoints");
    const json& descriptors = require(r, "descriptors");
    if (!keypoints.is_array() || !descriptors.is_array() ||
        keypoints.size() != descriptors.size()) {
      throw SchemaError("reference '" + entry.name +
                        "': keypoints/descriptors must be arrays of equal length");
    }
    for (std::size_t i = 0; i < keypoints.size(); ++i) {
      const json& kj = keypoints[i];
      Keypoint kp;
      kp.x = field<float>(kj, "x");
      kp.y = field<float>(kj, "y");
      kp.level = field<int>(kj, "level");
      kp.angle_deg = field<float>(kj, "angle_deg");
      kp.response = field<float>(kj, "response");
      entry.features.keypoints.push_back(kp);
      entry.features.descriptors.push_back(
          descriptor_from_hex(descriptors[i].get<std::string>()));
    }
    profile.references.push_back(std::move(entry));
  }

  validate_profile(profile);
  return profile;
}

void save_profile(const CalibrationProfile& profile, const std::filesystem::path& path) {
  const std::string text = profile_to_json(profile);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

CalibrationProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return profile_from_json(text);
}

std::string classification_to_json(const std::string& path, const Classification& c) {
  json j;
  j["path"] = path;
  j["label"] = std::string(label_name(c.label));
  j["best_ref"] = c.best_ref;
  j["good_matches"] = c.good_matches;
  j["sharpness"] = c.sharpness;
  j["std_dev"] = c.std_dev;
  if (c.rotation_deg.has_value()) {
    j["rotation_deg"] = *c.rotation_deg;
  } else {
    j["rotation_deg"] = nullptr;
  }
  j["decision_path"] = c.decision_path;
  return j.dump();
}

std::string report_to_json(const EvalReport& report) {
  json j;
  j["n_samples"] = report.n_samples;
  j["positive_class"] = "abnormal";
  j["accuracy"] = report.accuracy;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f1"] = report.f1;
  j["precision_defined"] = report.precision_defined;
  j["recall_defined"] = report.recall_defined;
  j["f1_defined"] = report.f1_defined;
  j["binary_confusion"] = {{"tp", report.tp}, {"fp", report.fp}, {"tn", report.tn}, {"fn", report.fn}};
  json labels = json::array();
  for (TamperLabel label : kLabelOrder) {
    labels.push_back(std::string(label_name(label)));
  }
  j["labels"] = std::move(labels);
  json confusion = json::array();
  for (const auto& row : report.confusion) {
    confusion.push_back(row);
  }
  j["confusion"] = std::move(confusion);
  j["per_image_seconds"] = {{"mean", report.mean_seconds}, {"max", report.max_seconds}};
  return j.dump(2) + "\n";
}

}  // namespace tamperlens
