#include "rangeeer/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rangeeer/error.hpp"

namespace rangeeer {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonIntegerRatio: return "NonIntegerRatio";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidTrial: return "InvalidTrial";
  }
  return "Unknown";
}

std::string_view to_string(Label label) noexcept {
  return label == Label::Spoof ? "spoof" : "bonafide";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "spoof") return Label::Spoof;
  if (text == "bonafide") return Label::BonaFide;
  return std::nullopt;
}

std::string_view to_string(LabelRule rule) noexcept {
  return rule == LabelRule::AnySpoof ? "any-spoof" : "majority";
}

std::optional<LabelRule> parse_label_rule(std::string_view text) noexcept {
  if (text == "any-spoof") return LabelRule::AnySpoof;
  if (text == "majority") return LabelRule::MajorityDuration;
  return std::nullopt;
}

double overlap_duration(const TimeRange& a, const TimeRange& b) noexcept {
  return std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

std::size_t ScoreTrack::size() const noexcept {
  return is_uniform() ? uniform().scores.size() : ranged().ranges.size();
}

std::vector<ScoredRange> ScoreTrack::to_ranges() const {
  if (!is_uniform()) return ranged().ranges;
  const auto& u = uniform();
  std::vector<ScoredRange> out;
  out.reserve(u.scores.size());
  for (std::size_t m = 0; m < u.scores.size(); ++m) {
    const TimeRange seg = u.segment(m);
    out.push_back({seg.start, seg.end, u.scores[m]});
  }
  return out;
}

std::vector<double> ScoreTrack::scores() const {
  if (is_uniform()) return uniform().scores;
  std::vector<double> out;
  out.reserve(ranged().ranges.size());
  for (const auto& r : ranged().ranges) out.push_back(r.score);
  return out;
}

double Trial::duration() const noexcept {
  return reference.empty() ? 0.0 : reference.back().end;
}

namespace {

void check_hypothesis(const Trial& trial, std::vector<std::string>& out) {
  const double total = trial.duration();
  if (trial.hypothesis.size() == 0) {
    out.emplace_back("empty hypothesis");
    return;
  }
  if (trial.hypothesis.is_uniform()) {
    const auto& u = trial.hypothesis.uniform();
    if (!(u.resolution > 0.0) || !std::isfinite(u.resolution)) {
      out.emplace_back("non-positive hypothesis resolution");
      return;
    }
    if (std::ranges::any_of(u.scores, [](double s) { return !std::isfinite(s); }))
      out.emplace_back("non-finite hypothesis score");
    if (u.segment(u.scores.size() - 1).end < total)
      out.emplace_back("hypothesis does not cover reference span");
    return;
  }

  const auto& ranges = trial.hypothesis.ranged().ranges;
  bool covered = ranges.front().start <= 0.0 && ranges.back().end >= total;
  for (std::size_t j = 0; j < ranges.size(); ++j) {
    const auto& r = ranges[j];
    if (!std::isfinite(r.score)) out.emplace_back("non-finite hypothesis score");
    if (!(r.start < r.end)) {
      out.emplace_back("non-positive hypothesis range duration");
      continue;
    }
    if (j == 0) continue;
    const auto& prev = ranges[j - 1];
    if (r.start < prev.end) {
      out.emplace_back("overlapping hypothesis ranges");
    } else if (r.start > prev.end && r.start < total) {
      covered = false;
    }
  }
  if (!covered) out.emplace_back("hypothesis does not cover reference span");
}

}  // namespace

ValidationReport validate_trial(const Trial& trial) {
  ValidationReport report;
  auto& out = report.violations;
  const auto& ref = trial.reference;
  if (ref.empty()) {
    out.emplace_back("empty reference");
    return report;
  }
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!std::isfinite(ref[i].start) || !std::isfinite(ref[i].end) ||
        !(ref[i].start < ref[i].end)) {
      out.emplace_back("non-positive reference range duration");
    }
    if (i == 0) continue;
    if (ref[i].start < ref[i - 1].end) {
      out.emplace_back("overlapping reference ranges");
    } else if (ref[i].start > ref[i - 1].end) {
      out.emplace_back("gap in reference");
    }
  }
  if (ref.front().start != 0.0) out.emplace_back("reference does not start at 0");
  if (!out.empty()) return report;
  check_hypothesis(trial, out);
  return report;
}

void require_valid(std::span<const Trial> trials) {
  for (const auto& trial : trials) {
    const auto report = validate_trial(trial);
    if (report.ok()) continue;
    std::ostringstream msg;
    msg << "trial '" << trial.trial_id << "': " << report.violations.front();
    for (std::size_t k = 1; k < report.violations.size(); ++k)
      msg << "; " << report.violations[k];
    throw Error(ErrorKind::InvalidTrial, msg.str());
  }
}

DurationTotals duration_totals(std::span<const Trial> trials) {
  DurationTotals totals;
  for (const auto& trial : trials) {
    for (const auto& r : trial.reference) {
      const double d = overlap_duration(r.range(), r.range());
      (is_positive(r.label) ? totals.d_positive : totals.d_negative) += d;
    }
  }
  if (totals.d_negative <= 0.0 || totals.d_positive <= 0.0)
    throw Error(ErrorKind::EmptyClass,
                "dataset needs both bona fide and spoof reference duration");
  return totals;
}

std::size_t segment_count(double total, double resolution) {
  if (!(resolution > 0.0)) throw Error(ErrorKind::DomainError, "resolution must be > 0");
  if (!(total > 0.0)) return 0;
  auto n = static_cast<std::size_t>(std::ceil(total / resolution));
  // Division may round up past an exact boundary; a segment exists only if
  // it starts before the end of the span.
  while (n > 1 && static_cast<double>(n - 1) * resolution >= total) --n;
  while (static_cast<double>(n) * resolution < total) ++n;
  return n;
}

SegmentLabels segment_reference(std::span<const LabeledRange> reference,
                                double resolution, LabelRule rule) {
  SegmentLabels out{resolution, {}};
  if (reference.empty()) return out;
  const double total = reference.back().end;
  const std::size_t n = segment_count(total, resolution);
  out.labels.reserve(n);

  std::size_t first = 0;  // first reference range that may touch segment m
  for (std::size_t m = 0; m < n; ++m) {
    const TimeRange seg{static_cast<double>(m) * resolution,
                        static_cast<double>(m + 1) * resolution};
    while (first < reference.size() && reference[first].end <= seg.start) ++first;
    double spoof = 0.0;
    double bona = 0.0;
    for (std::size_t i = first; i < reference.size() && reference[i].start < seg.end; ++i) {
      const double d = overlap_duration(reference[i].range(), seg);
      (is_positive(reference[i].label) ? spoof : bona) += d;
    }
    const bool is_spoof =
        rule == LabelRule::AnySpoof ? spoof > 0.0 : spoof >= bona;
    out.labels.push_back(is_spoof ? Label::Spoof : Label::BonaFide);
  }
  return out;
}

}  // namespace rangeeer
