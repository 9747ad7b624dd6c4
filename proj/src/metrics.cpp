#include "rangeeer/metrics.hpp"

#include <cmath>

#include "rangeeer/error.hpp"
#include "rangeeer/overlap_table.hpp"

namespace rangeeer {

std::string_view to_string(Measure mode) noexcept {
  return mode == Measure::Point ? "point" : "range";
}

ConfusionTotals point_confusion(const SegmentLabels& labels,
                                std::span<const double> scores, double tau) {
  if (labels.labels.size() != scores.size())
    throw Error(ErrorKind::LengthMismatch, "labels and scores differ in length");
  // Counts stay below 2^53, so double accumulation is exact.
  ConfusionTotals c;
  c.mode = Measure::Point;
  for (std::size_t m = 0; m < scores.size(); ++m) {
    const bool decided_spoof = scores[m] < tau;
    if (is_positive(labels.labels[m])) {
      (decided_spoof ? c.tp : c.fn) += 1.0;
    } else {
      (decided_spoof ? c.fp : c.tn) += 1.0;
    }
  }
  if (c.negatives() == 0.0 || c.positives() == 0.0)
    throw Error(ErrorKind::EmptyClass, "segment labels contain only one class");
  return c;
}

RatePair point_rates(const SegmentLabels& labels, std::span<const double> scores,
                     double tau) {
  const auto c = point_confusion(labels, scores, tau);
  return {c.fp / c.negatives(), c.fn / c.positives(), tau};
}

PointSet segment_dataset(std::span<const Trial> trials, double resolution,
                         LabelRule rule) {
  require_valid(trials);
  PointSet out;
  out.labels.resolution = resolution;
  for (const auto& trial : trials) {
    if (!trial.hypothesis.is_uniform())
      throw Error(ErrorKind::DomainError,
                  "trial '" + trial.trial_id + "': point measurement needs uniform scores");
    const auto& u = trial.hypothesis.uniform();
    if (u.resolution != resolution)
      throw Error(ErrorKind::DomainError,
                  "trial '" + trial.trial_id +
                      "': hypothesis resolution differs from measurement resolution");
    const auto seg = segment_reference(trial.reference, resolution, rule);
    if (u.scores.size() < seg.labels.size())
      throw Error(ErrorKind::LengthMismatch,
                  "trial '" + trial.trial_id + "': fewer scores than segments");
    out.labels.labels.insert(out.labels.labels.end(), seg.labels.begin(), seg.labels.end());
    out.scores.insert(out.scores.end(), u.scores.begin(),
                      u.scores.begin() + static_cast<std::ptrdiff_t>(seg.labels.size()));
  }
  return out;
}

ConfusionTotals range_confusion(std::span<const Trial> trials, double tau) {
  const auto table = OverlapTable::build(trials);
  duration_totals(trials);
  return table.confusion(tau);
}

RatePair range_rates(std::span<const Trial> trials, double tau) {
  const auto table = OverlapTable::build(trials);
  duration_totals(trials);
  return table.rates(tau);
}

}  // namespace rangeeer
