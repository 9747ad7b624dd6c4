#include "rangeeer/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rangeeer::io {

namespace {

std::string located(std::string_view file, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << file << ":" << line << ": " << what;
  return msg.str();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto pos = line.find(sep, begin);
    out.push_back(line.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_spaces(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto field : split(text, ' '))
    if (!field.empty()) out.push_back(field);
  return out;
}

// Reads data lines, skipping comments and blanks; calls fn(line_no, fields).
template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    fn(line_no, split(view, '\t'));
  }
}

class RowParser {
 public:
  RowParser(std::string_view file, std::size_t line) : file_(file), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(std::string(file_), line_, what);
  }

  double number(std::string_view text, const char* field) const {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
      fail(std::string("invalid ") + field + " '" + std::string(text) + "'");
    return value;
  }

  std::string id(std::string_view text) const {
    if (text.empty()) fail("empty trial id");
    return std::string(text);
  }

 private:
  std::string_view file_;
  std::size_t line_;
};

template <typename Entry>
Entry& entry_for(std::vector<Entry>& entries,
                 std::unordered_map<std::string, std::size_t>& index,
                 const std::string& id) {
  const auto [it, inserted] = index.try_emplace(id, entries.size());
  if (inserted) {
    entries.emplace_back();
    entries.back().trial_id = id;
  }
  return entries[it->second];
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

ParseError::ParseError(std::string file, std::size_t line, const std::string& what)
    : std::runtime_error(located(file, line, what)), file_(std::move(file)), line_(line) {}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<ReferenceEntry> read_reference(std::istream& in, std::string_view name) {
  std::vector<ReferenceEntry> entries;
  std::unordered_map<std::string, std::size_t> index;
  for_each_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    const RowParser row(name, line_no);
    if (fields.size() != 4) row.fail("expected 4 tab-separated fields");
    LabeledRange range;
    range.start = row.number(fields[1], "start");
    range.end = row.number(fields[2], "end");
    const auto label = parse_label(fields[3]);
    if (!label) row.fail("label must be 'bonafide' or 'spoof'");
    range.label = *label;
    entry_for(entries, index, row.id(fields[0])).ranges.push_back(range);
  });
  for (auto& e : entries)
    std::ranges::stable_sort(e.ranges, {}, &LabeledRange::start);
  return entries;
}

std::vector<ScoreEntry> read_scores(std::istream& in, std::string_view name) {
  std::vector<ScoreEntry> entries;
  std::vector<std::vector<ScoredRange>> ranged;  // parallel to entries
  std::unordered_map<std::string, std::size_t> index;
  std::size_t columns = 0;
  for_each_row(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    const RowParser row(name, line_no);
    if (fields.size() != 3 && fields.size() != 4)
      row.fail("expected 3 (uniform) or 4 (ranged) tab-separated fields");
    if (columns == 0) columns = fields.size();
    if (fields.size() != columns) row.fail("uniform and ranged rows are mixed");

    const std::string id = row.id(fields[0]);
    if (columns == 3) {
      if (index.contains(id)) row.fail("duplicate uniform row for trial '" + id + "'");
      UniformScores u;
      u.resolution = row.number(fields[1], "resolution");
      if (!(u.resolution > 0.0)) row.fail("resolution must be > 0");
      for (auto text : split_spaces(fields[2])) u.scores.push_back(row.number(text, "score"));
      if (u.scores.empty()) row.fail("no scores");
      entry_for(entries, index, id).track = ScoreTrack(std::move(u));
      return;
    }
    ScoredRange r;
    r.start = row.number(fields[1], "start");
    r.end = row.number(fields[2], "end");
    r.score = row.number(fields[3], "score");
    entry_for(entries, index, id);
    ranged.resize(entries.size());
    ranged[index.at(id)].push_back(r);
  });
  if (columns == 4) {
    for (std::size_t k = 0; k < entries.size(); ++k) {
      std::ranges::stable_sort(ranged[k], {}, &ScoredRange::start);
      entries[k].track = ScoreTrack(RangedScores{std::move(ranged[k])});
    }
  }
  return entries;
}

std::vector<ReferenceEntry> read_reference_file(const std::string& path) {
  auto in = open(path);
  return read_reference(in, path);
}

std::vector<ScoreEntry> read_scores_file(const std::string& path) {
  auto in = open(path);
  return read_scores(in, path);
}

void write_reference(std::ostream& out, std::span<const ReferenceEntry> entries) {
  for (const auto& e : entries)
    for (const auto& r : e.ranges)
      out << e.trial_id << '\t' << format_number(r.start) << '\t' << format_number(r.end)
          << '\t' << to_string(r.label) << '\n';
}

void write_scores(std::ostream& out, std::span<const ScoreEntry> entries) {
  for (const auto& e : entries) {
    if (e.track.is_uniform()) {
      const auto& u = e.track.uniform();
      out << e.trial_id << '\t' << format_number(u.resolution) << '\t';
      for (std::size_t m = 0; m < u.scores.size(); ++m)
        out << (m ? " " : "") << format_number(u.scores[m]);
      out << '\n';
      continue;
    }
    for (const auto& r : e.track.ranged().ranges)
      out << e.trial_id << '\t' << format_number(r.start) << '\t' << format_number(r.end)
          << '\t' << format_number(r.score) << '\n';
  }
}

void write_reference(std::ostream& out, std::span<const Trial> trials) {
  for (const auto& t : trials) {
    const ReferenceEntry e{t.trial_id, t.reference};
    write_reference(out, std::span(&e, 1));
  }
}

void write_scores(std::ostream& out, std::span<const Trial> trials) {
  for (const auto& t : trials) {
    const ScoreEntry e{t.trial_id, t.hypothesis};
    write_scores(out, std::span(&e, 1));
  }
}

Dataset assemble(std::vector<ReferenceEntry> refs, std::vector<ScoreEntry> scores) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t k = 0; k < scores.size(); ++k) by_id.emplace(scores[k].trial_id, k);

  Dataset out;
  out.reserve(refs.size());
  std::vector<std::string> missing;
  std::unordered_set<std::string> used;
  for (auto& ref : refs) {
    const auto it = by_id.find(ref.trial_id);
    if (it == by_id.end()) {
      missing.push_back(ref.trial_id);
      continue;
    }
    used.insert(ref.trial_id);
    out.push_back({std::move(ref.trial_id), std::move(ref.ranges),
                   std::move(scores[it->second].track)});
  }
  std::vector<std::string> extra;
  for (const auto& s : scores)
    if (!used.contains(s.trial_id)) extra.push_back(s.trial_id);
  if (missing.empty() && extra.empty()) return out;

  std::ostringstream msg;
  if (!missing.empty()) {
    msg << missing.size() << " trial(s) missing from scores, first '" << missing.front() << "'";
  }
  if (!extra.empty()) {
    msg << (missing.empty() ? "" : "; ") << extra.size()
        << " scored trial(s) absent from reference, first '" << extra.front() << "'";
  }
  throw TrialMismatch(msg.str());
}

}  // namespace rangeeer::io
