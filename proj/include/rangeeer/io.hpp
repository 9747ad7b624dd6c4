#pragma once

// Tab-separated reference and score files.
//
//   reference:      trial_id <TAB> start <TAB> end <TAB> bonafide|spoof
//   ranged scores:  trial_id <TAB> start <TAB> end <TAB> score
//   uniform scores: trial_id <TAB> resolution <TAB> s0 s1 s2 ...
//
// Lines starting with '#' and blank lines are ignored. Numbers are written
// in shortest round-trip form and parsed without rounding.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rangeeer/timeline.hpp"

namespace rangeeer::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Reference and score files disagree on the set of trial ids.
class TrialMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceEntry {
  std::string trial_id;
  std::vector<LabeledRange> ranges;  // sorted by start
};

struct ScoreEntry {
  std::string trial_id;
  ScoreTrack track;
};

std::string format_number(double value);

std::vector<ReferenceEntry> read_reference(std::istream& in, std::string_view name);
std::vector<ScoreEntry> read_scores(std::istream& in, std::string_view name);

std::vector<ReferenceEntry> read_reference_file(const std::string& path);
std::vector<ScoreEntry> read_scores_file(const std::string& path);

void write_reference(std::ostream& out, std::span<const ReferenceEntry> entries);
void write_scores(std::ostream& out, std::span<const ScoreEntry> entries);

void write_reference(std::ostream& out, std::span<const Trial> trials);
void write_scores(std::ostream& out, std::span<const Trial> trials);

/// Pairs references with scores by trial id, in reference order.
Dataset assemble(std::vector<ReferenceEntry> refs, std::vector<ScoreEntry> scores);

}  // namespace rangeeer::io
