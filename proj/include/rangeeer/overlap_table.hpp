#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rangeeer/metrics.hpp"
#include "rangeeer/timeline.hpp"

namespace rangeeer {

/// One hypothesis range reduced to what the range-based rates need: its
/// score and how many seconds of it overlap bona fide and spoof reference.
struct ClassSplit {
  double score = 0.0;
  double negative = 0.0;
  double positive = 0.0;
};

/// Hypothesis ranges of a whole dataset, intersected once with the
/// references so that rates at any threshold are a single linear pass.
///
/// Sums are formed per trial in time order and then reduced over trials in
/// input order, so results are bit-identical for any thread count and agree
/// exactly with the serial kernel.
class OverlapTable {
 public:
  /// Throws InvalidTrial for invalid trials. Does not require both classes.
  static OverlapTable build(std::span<const Trial> trials);

  std::span<const ClassSplit> entries() const noexcept { return entries_; }
  std::span<const std::size_t> trial_offsets() const noexcept { return offsets_; }
  std::size_t trial_count() const noexcept { return offsets_.size() - 1; }

  /// Covered bona fide / spoof seconds, summed in the kernel's order.
  double negative_total() const noexcept { return negative_total_; }
  double positive_total() const noexcept { return positive_total_; }

  /// Hypothesis seconds lying outside every reference span (ignored).
  double outside_seconds() const noexcept { return outside_seconds_; }
  std::size_t dropped_ranges() const noexcept { return dropped_ranges_; }

  ConfusionTotals confusion(double tau) const;
  ConfusionTotals confusion_serial(double tau) const;

  /// Throws EmptyClass when either covered total is zero.
  RatePair rates(double tau) const;
  RatePair rates_serial(double tau) const;

  /// Scores of all entries, ascending, one per hypothesis range.
  std::vector<double> sorted_scores() const;

 private:
  void require_both_classes() const;

  std::vector<ClassSplit> entries_;
  std::vector<std::size_t> offsets_{0};
  double negative_total_ = 0.0;
  double positive_total_ = 0.0;
  double outside_seconds_ = 0.0;
  std::size_t dropped_ranges_ = 0;
};

}  // namespace rangeeer
