#pragma once

#include <array>
#include <span>

#include "tamperlens/dataset.hpp"
#include "tamperlens/pipeline.hpp"

namespace tamperlens {

// Row/column order of the 4x4 confusion matrix.
inline constexpr std::array<TamperLabel, 4> kLabelOrder = {
    TamperLabel::normal, TamperLabel::blurred, TamperLabel::rotated, TamperLabel::obstructed};

// Aggregate results of classifying a labeled dataset. Binary metrics treat
// abnormal (blurred/rotated/obstructed collapsed) as the positive class.
// Degenerate denominators report 0 with the matching *_defined flag
// cleared instead of failing.
struct EvalReport {
  std::array<std::array<int, 4>, 4> confusion{};  // [true][predicted]
  int tp = 0, fp = 0, tn = 0, fn = 0;             // binary, abnormal = positive
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;
  double mean_seconds = 0.0;  // per-image classify wall time
  double max_seconds = 0.0;
  int n_samples = 0;
};

// One classified sample, the unit make_report aggregates.
struct Outcome {
  TamperLabel truth;
  TamperLabel predicted;
  double seconds = 0.0;
};

// Pure metric computation; evaluate() routes through this.
EvalReport make_report(std::span<const Outcome> outcomes);

// Classifies every sample and aggregates both confusion matrices and the
// binary metrics. Wall time is measured around classify only (decode cost
// excluded). Throws Error on an empty dataset.
EvalReport evaluate(const CalibrationProfile& profile, const LabeledDataset& dataset);

}  // namespace tamperlens
