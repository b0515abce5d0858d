#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support/fixtures.hpp"
#include "tamperlens/errors.hpp"
#include "tamperlens/profile_json.hpp"

using namespace tamperlens;
namespace fs = std::filesystem;

namespace {

fs::path scratch_file(const std::string& tag) {
  return fs::temp_directory_path() /
         ("tamperlens_profile_" + tag + "_" + std::to_string(::getpid()) + ".json");
}

}  // namespace

TEST_CASE("profile save/load round trip is lossless") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const fs::path path = scratch_file("roundtrip");
  save_profile(profile, path);
  const CalibrationProfile loaded = load_profile(path);
  CHECK(loaded == profile);
  fs::remove(path);
}

TEST_CASE("profile serialization is byte-stable") {
  const CalibrationProfile& profile = fixtures::standard_profile();
  const std::string a = profile_to_json(profile);
  const std::string b = profile_to_json(profile);
  CHECK(a == b);
  // Through a parse cycle as well.
  CHECK(profile_to_json(profile_from_json(a)) == a);
}

TEST_CASE("profile load rejects unknown versions") {
  std::string patched = profile_to_json(fixtures::standard_profile());
  const auto pos = patched.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  patched.replace(pos, std::string("\"version\": 1").size(), "\"version\": 999");
  try {
    profile_from_json(patched);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }
}

TEST_CASE("profile load names a missing field") {
  std::string text = profile_to_json(fixtures::standard_profile());
  const auto pos = text.find("\"match_count_min\"");
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  text.erase(pos, end - pos + 1);
  try {
    profile_from_json(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()) == "missing field: match_count_min");
  }
}

TEST_CASE("profile load rejects malformed JSON and invariant violations") {
  CHECK_THROWS_AS(profile_from_json("not json at all {"), SchemaError);
  CHECK_THROWS_AS(profile_from_json("[1, 2, 3]"), SchemaError);

  // Fewer than 2 references violates a profile invariant on load.
  nlohmann::json j = nlohmann::json::parse(profile_to_json(fixtures::standard_profile()));
  j["references"].erase(j["references"].begin() + 1, j["references"].end());
  try {
    profile_from_json(j.dump());
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("references") != std::string::npos);
  }

  // Bad descriptor payloads are rejected too.
  nlohmann::json k = nlohmann::json::parse(profile_to_json(fixtures::standard_profile()));
  k["references"][0]["descriptors"][0] = "zz";
  CHECK_THROWS_AS(profile_from_json(k.dump()), SchemaError);
}

TEST_CASE("classification records serialize with all diagnostic fields") {
  Classification c;
  c.label = TamperLabel::rotated;
  c.best_ref = "ref_delta_0";
  c.good_matches = 42;
  c.sharpness = 123.5;
  c.std_dev = 31.25;
  c.rotation_deg = 88.5;
  c.decision_path = {rules::kMatchesOk, rules::kRotationExceeds};
  const std::string json = classification_to_json("img.pgm", c);
  CHECK(json.find("\"label\":\"rotated\"") != std::string::npos);
  CHECK(json.find("\"good_matches\":42") != std::string::npos);
  CHECK(json.find("\"rotation_deg\":88.5") != std::string::npos);

  c.rotation_deg.reset();
  const std::string no_rotation = classification_to_json("img.pgm", c);
  CHECK(no_rotation.find("\"rotation_deg\":null") != std::string::npos);
}
