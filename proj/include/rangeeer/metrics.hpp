#pragma once

// False positive / false negative rates at a threshold, measured either by
// counting uniform segments (point) or by summing misclassified duration
// (range). A score below the threshold is a spoof decision:
//
//   FP: bona fide with score <  tau
//   FN: spoof     with score >= tau
//
// These boundary conventions are fixed and not configurable.

#include <span>
#include <string_view>
#include <vector>

#include "rangeeer/timeline.hpp"

namespace rangeeer {

enum class Measure { Point, Range };

std::string_view to_string(Measure mode) noexcept;

struct RatePair {
  double p_fp = 0.0;
  double p_fn = 0.0;
  double tau = 0.0;

  double gap() const noexcept { return p_fp - p_fn; }
};

/// Counts (point) or seconds (range).
struct ConfusionTotals {
  double tp = 0.0;
  double fn = 0.0;
  double fp = 0.0;
  double tn = 0.0;
  Measure mode = Measure::Range;

  double negatives() const noexcept { return fp + tn; }
  double positives() const noexcept { return fn + tp; }
};

/// Pooled segment labels and their scores, one score per segment.
struct PointSet {
  SegmentLabels labels;
  std::vector<double> scores;
};

RatePair point_rates(const SegmentLabels& labels, std::span<const double> scores,
                     double tau);
ConfusionTotals point_confusion(const SegmentLabels& labels,
                                std::span<const double> scores, double tau);

/// Segments every reference at `resolution` and pairs each segment with the
/// uniform hypothesis score at the same index. Hypotheses must be uniform at
/// exactly this resolution; extra trailing scores are ignored.
PointSet segment_dataset(std::span<const Trial> trials, double resolution,
                         LabelRule rule = LabelRule::AnySpoof);

RatePair range_rates(std::span<const Trial> trials, double tau);
ConfusionTotals range_confusion(std::span<const Trial> trials, double tau);

}  // namespace rangeeer
