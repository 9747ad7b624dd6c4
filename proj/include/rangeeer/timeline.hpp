#pragma once

// Domain types for partially spoofed trials: labeled reference ranges,
// hypothesis score tracks, validation, and reference pre-segmentation.
//
// All times are seconds stored as double. Intervals are half-open
// [start, end), so ranges that share a boundary do not overlap.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rangeeer {

/// Spoof is the positive class, bona fide the negative one.
enum class Label : std::uint8_t { Spoof, BonaFide };

constexpr bool is_positive(Label label) noexcept { return label == Label::Spoof; }

std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

struct TimeRange {
  double start = 0.0;
  double end = 0.0;

  double duration() const noexcept { return end - start; }
};

/// Length of the intersection of two half-open ranges, never negative.
double overlap_duration(const TimeRange& a, const TimeRange& b) noexcept;

struct LabeledRange {
  double start = 0.0;
  double end = 0.0;
  Label label = Label::BonaFide;

  TimeRange range() const noexcept { return {start, end}; }
  double duration() const noexcept { return end - start; }
};

struct ScoredRange {
  double start = 0.0;
  double end = 0.0;
  double score = 0.0;

  TimeRange range() const noexcept { return {start, end}; }
};

/// Fixed-rate scores; score m covers [m * resolution, (m + 1) * resolution).
struct UniformScores {
  double resolution = 0.0;
  std::vector<double> scores;

  TimeRange segment(std::size_t m) const noexcept {
    return {static_cast<double>(m) * resolution,
            static_cast<double>(m + 1) * resolution};
  }
};

struct RangedScores {
  std::vector<ScoredRange> ranges;
};

/// Hypothesis scores of one trial. Higher scores mean "more likely bona fide".
class ScoreTrack {
 public:
  ScoreTrack() = default;
  ScoreTrack(UniformScores uniform) : data_(std::move(uniform)) {}
  ScoreTrack(RangedScores ranged) : data_(std::move(ranged)) {}

  bool is_uniform() const noexcept {
    return std::holds_alternative<UniformScores>(data_);
  }
  const UniformScores& uniform() const { return std::get<UniformScores>(data_); }
  const RangedScores& ranged() const { return std::get<RangedScores>(data_); }

  std::size_t size() const noexcept;

  /// Every score with its explicit time range, in time order.
  std::vector<ScoredRange> to_ranges() const;

  /// Flat score list in time order.
  std::vector<double> scores() const;

 private:
  std::variant<UniformScores, RangedScores> data_;
};

struct Trial {
  std::string trial_id;
  std::vector<LabeledRange> reference;
  ScoreTrack hypothesis;

  /// End of the last reference range.
  double duration() const noexcept;
};

using Dataset = std::vector<Trial>;

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_trial(const Trial& trial);

/// Throws Error(InvalidTrial) naming the first invalid trial.
void require_valid(std::span<const Trial> trials);

struct DurationTotals {
  double d_negative = 0.0;  // bona fide seconds
  double d_positive = 0.0;  // spoof seconds
};

/// Pooled reference durations; throws EmptyClass if either class is absent.
DurationTotals duration_totals(std::span<const Trial> trials);

enum class LabelRule {
  AnySpoof,          // any spoof overlap makes the segment spoof
  MajorityDuration,  // larger overlap wins, ties go to spoof
};

std::string_view to_string(LabelRule rule) noexcept;
std::optional<LabelRule> parse_label_rule(std::string_view text) noexcept;

struct SegmentLabels {
  double resolution = 0.0;
  std::vector<Label> labels;
};

/// Number of uniform segments whose start lies before `total`.
std::size_t segment_count(double total, double resolution);

/// Splits a reference into uniform segments and labels each one by `rule`.
/// A trailing partial segment is kept and labeled over its actual extent.
SegmentLabels segment_reference(std::span<const LabeledRange> reference,
                                double resolution,
                                LabelRule rule = LabelRule::AnySpoof);

}  // namespace rangeeer
