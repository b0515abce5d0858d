#pragma once

#include <cstdint>

#include "tamperlens/image.hpp"

namespace tamperlens {

// Knobs for the synthetic tamper generators, bundled for the CLI.
struct SynthParams {
  double sigma = 0.0;              // Gaussian std-dev in pixels, >= 0
  double angle_deg = 0.0;          // rotation in degrees
  int obstruct_level = 0;          // fill intensity, 0..255
  double obstruct_coverage = 1.0;  // fraction of rows filled, (0, 1]
  int jitter_delta = 0;            // signed intensity offset
};

// Separable Gaussian convolution, kernel radius ceil(3*sigma), kernel
// normalized to sum 1, borders edge-replicated. sigma == 0 returns the
// input unchanged. Throws std::invalid_argument for negative sigma.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

// Rotation about the image center ((w-1)/2, (h-1)/2) with bilinear
// interpolation; output keeps the input dimensions, pixels that fall
// outside the source are 0. Sample coordinates within 1e-9 of a grid
// point are snapped, so multiples of 90 degrees reduce to exact index
// permutations on square images.
GrayImage rotate_image(const GrayImage& img, double angle_deg);

// Fills the top ceil(coverage * height) rows with `level`. coverage == 1
// yields a fully uniform image. Throws std::invalid_argument when coverage
// is outside (0, 1].
GrayImage obstruct(const GrayImage& img, std::uint8_t level, double coverage);

// Per-pixel clamp(pixel + delta, 0, 255).
GrayImage brightness_jitter(const GrayImage& img, int delta);

}  // namespace tamperlens
