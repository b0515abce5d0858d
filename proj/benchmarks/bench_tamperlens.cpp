#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tamperlens/matching.hpp"
#include "tamperlens/metrics.hpp"
#include "tamperlens/orb.hpp"
#include "tamperlens/pipeline.hpp"
#include "tamperlens/synth.hpp"

using namespace tamperlens;

namespace {

GrayImage speckle_scene(int width, int height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int bg = 40 + 175 * x / (width - 1);
      const double u = rng() * (1.0 / 4294967296.0);
      px[static_cast<std::size_t>(y) * width + x] =
          u < 0.06 ? 255 : (u < 0.12 ? 0 : static_cast<std::uint8_t>(bg));
    }
  }
  return gaussian_blur(GrayImage(width, height, std::move(px)), 1.0);
}

const GrayImage& scene() {
  static const GrayImage img = speckle_scene(320, 240, 7);
  return img;
}

const CalibrationProfile& profile() {
  static const CalibrationProfile p = [] {
    std::vector<NamedImage> refs;
    for (int delta : {-60, -40, -20, 0, 20, 40, 60, 80}) {
      refs.push_back({"ref" + std::to_string(delta), brightness_jitter(scene(), delta)});
    }
    return calibrate(refs, CalibrationConfig{});
  }();
  return p;
}

}  // namespace

static void BM_Extract(benchmark::State& state) {
  const GrayImage img = speckle_scene(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(0)) * 3 / 4, 11);
  for (auto _ : state) {
    FeatureSet fs = extract(img, OrbParams{});
    benchmark::DoNotOptimize(fs);
  }
}
BENCHMARK(BM_Extract)->Arg(320)->Arg(640);

static void BM_GoodMatchCount(benchmark::State& state) {
  const FeatureSet a = extract(scene(), OrbParams{});
  const FeatureSet b = extract(brightness_jitter(scene(), 25), OrbParams{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(good_match_count(a, b, MatchParams{}));
  }
}
BENCHMARK(BM_GoodMatchCount);

static void BM_LaplacianVariance(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian_variance(scene()));
  }
}
BENCHMARK(BM_LaplacianVariance);

static void BM_GaussianBlur(benchmark::State& state) {
  for (auto _ : state) {
    GrayImage out = gaussian_blur(scene(), 4.0);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_GaussianBlur);

static void BM_ClassifyNormal(benchmark::State& state) {
  const CalibrationProfile& p = profile();  // build outside the timed loop
  const GrayImage frame = brightness_jitter(scene(), 15);
  for (auto _ : state) {
    Classification c = classify(frame, p);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ClassifyNormal);

static void BM_ClassifyRotated(benchmark::State& state) {
  const CalibrationProfile& p = profile();
  const GrayImage frame = rotate_image(scene(), 90.0);
  for (auto _ : state) {
    Classification c = classify(frame, p);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ClassifyRotated);

BENCHMARK_MAIN();
