#pragma once

#include "tamperlens/image.hpp"

namespace tamperlens {

// Thresholds applied by the classifier; derived during calibration.
struct QualityThresholds {
  double blur_sharpness_min = 0.0;  // Laplacian-variance units
  double noimage_std_min = 10.0;    // intensity units

  friend bool operator==(const QualityThresholds&, const QualityThresholds&) = default;
};

// Population variance of the 4-neighbor Laplacian response
// [[0,1,0],[1,-4,1],[0,1,0]] over the interior (valid region, 1-px border
// excluded). Low values indicate defocus. Requires width, height >= 3.
double laplacian_variance(const GrayImage& img);

// Population standard deviation of all pixel intensities. Near zero for an
// empty or uniform frame. Requires a nonempty image.
double intensity_std(const GrayImage& img);

}  // namespace tamperlens
