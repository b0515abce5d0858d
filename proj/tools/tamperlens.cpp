// Command-line front end: calibrate a reference profile from normal frames,
// classify frames against it, evaluate a labeled dataset, and synthesize
// tampered test imagery.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tamperlens/dataset.hpp"
#include "tamperlens/errors.hpp"
#include "tamperlens/evaluate.hpp"
#include "tamperlens/netpbm.hpp"
#include "tamperlens/pipeline.hpp"
#include "tamperlens/profile_json.hpp"
#include "tamperlens/synth.hpp"

namespace fs = std::filesystem;
using namespace tamperlens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<NamedImage> load_reference_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("reference directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename().string().starts_with('.')) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<NamedImage> refs;
  for (const fs::path& file : files) {
    try {
      refs.push_back({file.filename().string(), load_gray(file)});
    } catch (const Error& e) {
      throw IoError("cannot decode reference '" + file.string() + "': " + e.what());
    }
  }
  return refs;
}

void print_report(const EvalReport& r) {
  std::printf("Samples:              %d\n", r.n_samples);
  std::printf("Positive class:       abnormal\n");
  std::printf("Accuracy:             %.4f\n", r.accuracy);
  std::printf("Precision:            %.4f%s\n", r.precision,
              r.precision_defined ? "" : " (undefined, reported as 0)");
  std::printf("Recall:               %.4f%s\n", r.recall,
              r.recall_defined ? "" : " (undefined, reported as 0)");
  std::printf("F1-Score:             %.4f%s\n", r.f1,
              r.f1_defined ? "" : " (undefined, reported as 0)");
  std::printf("Time per image:       %.4f sec mean, %.4f sec max\n", r.mean_seconds,
              r.max_seconds);
  std::printf("Binary confusion:     TP=%d FP=%d TN=%d FN=%d\n", r.tp, r.fp, r.tn, r.fn);
  std::printf("Confusion (true x predicted):\n");
  std::printf("%12s", "");
  for (TamperLabel label : kLabelOrder) {
    std::printf("%12s", std::string(label_name(label)).c_str());
  }
  std::printf("\n");
  for (std::size_t i = 0; i < kLabelOrder.size(); ++i) {
    std::printf("%12s", std::string(label_name(kLabelOrder[i])).c_str());
    for (std::size_t j = 0; j < kLabelOrder.size(); ++j) {
      std::printf("%12d", r.confusion[i][j]);
    }
    std::printf("\n");
  }
}

void print_classification(const std::string& path, const Classification& c) {
  std::printf("%s: %s (best_ref=%s, good_matches=%d, sharpness=%.2f, std_dev=%.2f",
              path.c_str(), std::string(label_name(c.label)).c_str(), c.best_ref.c_str(),
              c.good_matches, c.sharpness, c.std_dev);
  if (c.rotation_deg.has_value()) {
    std::printf(", rotation=%.1f deg", *c.rotation_deg);
  }
  std::printf(")\n");
}

int run_calibrate(const std::string& refs_dir, double beta, double gamma,
                  const std::string& out_path) {
  CalibrationConfig config;
  config.beta = beta;
  config.gamma = gamma;
  const std::vector<NamedImage> refs = load_reference_dir(refs_dir);
  const CalibrationProfile profile = calibrate(refs, config);
  save_profile(profile, out_path);
  std::printf("calibrated from %zu references\n", profile.references.size());
  std::printf("match_count_min:    %d\n", profile.match_count_min);
  std::printf("blur_sharpness_min: %.4f\n", profile.quality.blur_sharpness_min);
  std::printf("profile written to %s\n", out_path.c_str());
  return kExitOk;
}

int run_classify(const std::string& profile_path, const std::vector<std::string>& images,
                 bool as_json) {
  const CalibrationProfile profile = load_profile(profile_path);
  for (const std::string& image_path : images) {
    GrayImage img;
    try {
      img = load_gray(image_path);
    } catch (const Error& e) {
      throw IoError("cannot decode '" + image_path + "': " + e.what());
    }
    const Classification result = classify(img, profile);
    if (as_json) {
      std::printf("%s\n", classification_to_json(image_path, result).c_str());
    } else {
      print_classification(image_path, result);
    }
  }
  return kExitOk;
}

int run_evaluate(const std::string& profile_path, const std::string& dataset_dir, bool as_json) {
  const CalibrationProfile profile = load_profile(profile_path);
  const LabeledDataset dataset = load_dataset(dataset_dir);
  const EvalReport report = evaluate(profile, dataset);
  if (as_json) {
    std::printf("%s", report_to_json(report).c_str());
  } else {
    print_report(report);
  }
  return kExitOk;
}

int run_synth(const std::string& op, const SynthParams& params, const std::string& in_path,
              const std::string& out_path) {
  GrayImage img;
  try {
    img = load_gray(in_path);
  } catch (const Error& e) {
    throw IoError("cannot decode '" + in_path + "': " + e.what());
  }
  GrayImage out;
  if (op == "blur") {
    out = gaussian_blur(img, params.sigma);
  } else if (op == "rotate") {
    out = rotate_image(img, params.angle_deg);
  } else if (op == "obstruct") {
    out = obstruct(img, static_cast<std::uint8_t>(params.obstruct_level),
                   params.obstruct_coverage);
  } else {
    out = brightness_jitter(img, params.jitter_delta);
  }
  save_pgm(out, out_path);
  std::printf("%s -> %s (%s)\n", in_path.c_str(), out_path.c_str(), op.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based camera tampering detector"};
  app.require_subcommand(1);

  // calibrate
  auto* calibrate_cmd = app.add_subcommand(
      "calibrate", "Derive detection thresholds from a directory of normal reference frames");
  std::string refs_dir;
  std::string profile_out = "profile.json";
  double beta = 0.5;
  double gamma = 0.25;
  calibrate_cmd->add_option("--refs", refs_dir, "Directory of normal reference images (PGM/PPM)")
      ->required();
  calibrate_cmd->add_option("--beta", beta, "Fraction of the worst pairwise good-match count")
      ->check(CLI::PositiveNumber);
  calibrate_cmd->add_option("--gamma", gamma, "Fraction of the least-sharp reference's variance")
      ->check(CLI::PositiveNumber);
  calibrate_cmd->add_option("--out", profile_out, "Output profile path");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify images against a profile");
  std::string profile_path;
  std::vector<std::string> images;
  bool classify_json = false;
  classify_cmd->add_option("--profile", profile_path, "Calibration profile JSON")->required();
  classify_cmd->add_flag("--json", classify_json, "Emit one JSON record per image");
  classify_cmd->add_option("images", images, "Images to classify (PGM/PPM)")->required();

  // evaluate
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Classify a labeled dataset and report metrics");
  std::string eval_profile;
  std::string dataset_dir;
  bool evaluate_json = false;
  evaluate_cmd->add_option("--profile", eval_profile, "Calibration profile JSON")->required();
  evaluate_cmd
      ->add_option("--dataset", dataset_dir,
                   "Dataset root with normal/ blurred/ rotated/ obstructed/ subdirectories")
      ->required();
  evaluate_cmd->add_flag("--json", evaluate_json, "Emit the report as JSON");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic tampered variants");
  synth_cmd->require_subcommand(1);
  SynthParams params;
  struct SynthIo {
    std::string in, out;
  };
  SynthIo blur_io, rotate_io, obstruct_io, jitter_io;

  auto* blur_cmd = synth_cmd->add_subcommand("blur", "Gaussian blur");
  blur_cmd->add_option("--sigma", params.sigma, "Gaussian std-dev in pixels")
      ->required()
      ->check(CLI::NonNegativeNumber);
  blur_cmd->add_option("--in", blur_io.in, "Input image")->required();
  blur_cmd->add_option("--out", blur_io.out, "Output PGM")->required();

  auto* rotate_cmd = synth_cmd->add_subcommand("rotate", "Rotate about the image center");
  rotate_cmd->add_option("--angle", params.angle_deg, "Angle in degrees")->required();
  rotate_cmd->add_option("--in", rotate_io.in, "Input image")->required();
  rotate_cmd->add_option("--out", rotate_io.out, "Output PGM")->required();

  auto* obstruct_cmd = synth_cmd->add_subcommand("obstruct", "Fill the top rows with a level");
  obstruct_cmd->add_option("--level", params.obstruct_level, "Fill intensity 0..255")
      ->required()
      ->check(CLI::Range(0, 255));
  obstruct_cmd->add_option("--coverage", params.obstruct_coverage, "Fraction of rows, (0,1]")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  obstruct_cmd->add_option("--in", obstruct_io.in, "Input image")->required();
  obstruct_cmd->add_option("--out", obstruct_io.out, "Output PGM")->required();

  auto* jitter_cmd = synth_cmd->add_subcommand("jitter", "Add a clamped intensity offset");
  jitter_cmd->add_option("--delta", params.jitter_delta, "Signed offset")->required();
  jitter_cmd->add_option("--in", jitter_io.in, "Input image")->required();
  jitter_cmd->add_option("--out", jitter_io.out, "Output PGM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (calibrate_cmd->parsed()) {
      return run_calibrate(refs_dir, beta, gamma, profile_out);
    }
    if (classify_cmd->parsed()) {
      return run_classify(profile_path, images, classify_json);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(eval_profile, dataset_dir, evaluate_json);
    }
    if (synth_cmd->parsed()) {
      if (blur_cmd->parsed()) return run_synth("blur", params, blur_io.in, blur_io.out);
      if (rotate_cmd->parsed()) return run_synth("rotate", params, rotate_io.in, rotate_io.out);
      if (obstruct_cmd->parsed()) {
        return run_synth("obstruct", params, obstruct_io.in, obstruct_io.out);
      }
      return run_synth("jitter", params, jitter_io.in, jitter_io.out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
