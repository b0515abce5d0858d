#include "tamperlens/evaluate.hpp"

#include <algorithm>
#include <chrono>

#include "tamperlens/errors.hpp"

namespace tamperlens {

namespace {

int label_index(TamperLabel label) {
  for (std::size_t i = 0; i < kLabelOrder.size(); ++i) {
    if (kLabelOrder[i] == label) return static_cast<int>(i);
  }
  return 0;
}

}  // namespace

EvalReport make_report(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) {
    throw Error("cannot build a report from zero samples");
  }

  EvalReport report;
  report.n_samples = static_cast<int>(outcomes.size());
  for (const Outcome& o : outcomes) {
    report.confusion[label_index(o.truth)][label_index(o.predicted)] += 1;
    const bool truth_abnormal = o.truth != TamperLabel::normal;
    const bool pred_abnormal = o.predicted != TamperLabel::normal;
    if (truth_abnormal && pred_abnormal) report.tp += 1;
    if (!truth_abnormal && pred_abnormal) report.fp += 1;
    if (!truth_abnormal && !pred_abnormal) report.tn += 1;
    if (truth_abnormal && !pred_abnormal) report.fn += 1;

    report.mean_seconds += o.seconds;
    report.max_seconds = std::max(report.max_seconds, o.seconds);
  }
  report.mean_seconds /= static_cast<double>(report.n_samples);

  report.accuracy = static_cast<double>(report.tp + report.tn) / report.n_samples;
  if (report.tp + report.fp > 0) {
    report.precision = static_cast<double>(report.tp) / (report.tp + report.fp);
  } else {
    report.precision = 0.0;
    report.precision_defined = false;
  }
  if (report.tp + report.fn > 0) {
    report.recall = static_cast<double>(report.tp) / (report.tp + report.fn);
  } else {
    report.recall = 0.0;
    report.recall_defined = false;
  }
  if (report.precision + report.recall > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
  } else {
    report.f1 = 0.0;
    report.f1_defined = false;
  }
  return report;
}

EvalReport evaluate(const CalibrationProfile& profile, const LabeledDataset& dataset) {
  if (dataset.empty()) {
    throw Error("cannot evaluate an empty dataset");
  }

  std::vector<Outcome> outcomes;
  outcomes.reserve(dataset.size());
  for (const DatasetSample& sample : dataset.samples) {
    const auto start = std::chrono::steady_clock::now();
    const Classification result = classify(sample.image, profile);
    const auto stop = std::chrono::steady_clock::now();
    outcomes.push_back({sample.truth, result.label,
                        std::chrono::duration<double>(stop - start).count()});
  }
  return make_report(outcomes);
}

}  // namespace tamperlens
