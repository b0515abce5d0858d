#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tamperlens/image.hpp"
#include "tamperlens/pipeline.hpp"

namespace fixtures {

// Deterministic helpers built on the raw engine output so every platform
// sees identical fixtures.
double uniform01(std::mt19937& rng);         // [0, 1)
double unit_gauss(std::mt19937& rng);        // sum of 12 uniforms - 6

// Speckle texture over a horizontal intensity gradient, Gaussian-smoothed:
// rich in corners at every scale, isotropic, and spanning enough of the
// intensity range that brightness offsets clip part of it.
tamperlens::GrayImage textured(int width, int height, std::uint32_t seed);

// The shared 320x240 instance most suites use (seed fixed, cached).
const tamperlens::GrayImage& standard_fixture();

// Square 240x240 crop of the standard fixture, for exact-permutation tests.
const tamperlens::GrayImage& square_fixture();

tamperlens::GrayImage checkerboard(int width, int height, int tile = 1, std::uint8_t a = 0,
                                   std::uint8_t b = 255);

tamperlens::GrayImage uniform_image(int width, int height, std::uint8_t value);

tamperlens::GrayImage add_noise(const tamperlens::GrayImage& img, double sigma,
                                std::uint32_t seed);

// Brightness offsets used to derive calibration references from the
// standard fixture.
const std::vector<int>& calibration_deltas();  // {-60,-40,-20,0,+20,+40,+60,+80}

std::vector<tamperlens::NamedImage> calibration_references();

// Profile calibrated from calibration_references() with default config
// (computed once, shared).
const tamperlens::CalibrationProfile& standard_profile();

}  // namespace fixtures
