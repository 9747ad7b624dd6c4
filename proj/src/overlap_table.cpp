#include "rangeeer/overlap_table.hpp"

#include <algorithm>

#include "rangeeer/error.hpp"

namespace rangeeer {

namespace {

struct TrialSplit {
  std::vector<ClassSplit> entries;
  double negative = 0.0;
  double positive = 0.0;
  double outside = 0.0;
  std::size_t dropped = 0;
};

TrialSplit split_trial(const Trial& trial) {
  TrialSplit out;
  const auto& ref = trial.reference;
  const auto hyp = trial.hypothesis.to_ranges();
  out.entries.reserve(hyp.size());

  std::size_t first = 0;
  for (const auto& h : hyp) {
    while (first < ref.size() && ref[first].end <= h.start) ++first;
    ClassSplit split{h.score, 0.0, 0.0};
    for (std::size_t i = first; i < ref.size() && ref[i].start < h.end; ++i) {
      const double d = overlap_duration(ref[i].range(), h.range());
      (is_positive(ref[i].label) ? split.positive : split.negative) += d;
    }
    const double covered = split.negative + split.positive;
    out.outside += std::max(0.0, (h.end - h.start) - covered);
    if (covered <= 0.0) {
      ++out.dropped;
      continue;
    }
    out.negative += split.negative;
    out.positive += split.positive;
    out.entries.push_back(split);
  }
  return out;
}

// Per-trial partial sums; the caller reduces them in trial order.
ConfusionTotals trial_confusion(std::span<const ClassSplit> entries, double tau) {
  ConfusionTotals c;
  for (const auto& e : entries) {
    if (e.score < tau) {
      c.fp += e.negative;
      c.tp += e.positive;
    } else {
      c.tn += e.negative;
      c.fn += e.positive;
    }
  }
  return c;
}

ConfusionTotals reduce(std::span<const ConfusionTotals> parts) {
  ConfusionTotals total;
  for (const auto& p : parts) {
    total.tp += p.tp;
    total.fn += p.fn;
    total.fp += p.fp;
    total.tn += p.tn;
  }
  total.mode = Measure::Range;
  return total;
}

RatePair to_rates(const ConfusionTotals& c, double negatives, double positives,
                  double tau) {
  return {c.fp / negatives, c.fn / positives, tau};
}

}  // namespace

OverlapTable OverlapTable::build(std::span<const Trial> trials) {
  require_valid(trials);

  std::vector<TrialSplit> splits(trials.size());
  const auto n = static_cast<std::ptrdiff_t>(trials.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t t = 0; t < n; ++t) splits[t] = split_trial(trials[t]);

  OverlapTable table;
  std::size_t total = 0;
  for (const auto& s : splits) total += s.entries.size();
  table.entries_.reserve(total);
  table.offsets_.reserve(splits.size() + 1);
  for (auto& s : splits) {
    table.entries_.insert(table.entries_.end(), s.entries.begin(), s.entries.end());
    table.offsets_.push_back(table.entries_.size());
    table.negative_total_ += s.negative;
    table.positive_total_ += s.positive;
    table.outside_seconds_ += s.outside;
    table.dropped_ranges_ += s.dropped;
  }
  return table;
}

ConfusionTotals OverlapTable::confusion(double tau) const {
  const auto n = static_cast<std::ptrdiff_t>(trial_count());
  std::vector<ConfusionTotals> parts(static_cast<std::size_t>(n));
  // Raw pointers keep the outlined loop body free of aliasing through `this`.
  const ClassSplit* data = entries_.data();
  const std::size_t* offsets = offsets_.data();
  ConfusionTotals* out = parts.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    out[t] = trial_confusion({data + offsets[t], data + offsets[t + 1]}, tau);
  return reduce(parts);
}

ConfusionTotals OverlapTable::confusion_serial(double tau) const {
  std::vector<ConfusionTotals> parts;
  parts.reserve(trial_count());
  const std::span<const ClassSplit> all(entries_);
  for (std::size_t t = 0; t < trial_count(); ++t)
    parts.push_back(trial_confusion(all.subspan(offsets_[t], offsets_[t + 1] - offsets_[t]), tau));
  return reduce(parts);
}

void OverlapTable::require_both_classes() const {
  if (negative_total_ <= 0.0 || positive_total_ <= 0.0)
    throw Error(ErrorKind::EmptyClass,
                "range rates need both bona fide and spoof duration");
}

RatePair OverlapTable::rates(double tau) const {
  require_both_classes();
  return to_rates(confusion(tau), negative_total_, positive_total_, tau);
}

RatePair OverlapTable::rates_serial(double tau) const {
  require_both_classes();
  return to_rates(confusion_serial(tau), negative_total_, positive_total_, tau);
}

std::vector<double> OverlapTable::sorted_scores() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.score);
  std::ranges::sort(out);
  return out;
}

}  // namespace rangeeer
