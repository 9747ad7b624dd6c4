#include "rangeeer/eer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rangeeer/error.hpp"

namespace rangeeer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gap_of(const RatePair& r) { return std::abs(r.gap()); }

EerResult at_threshold(const RatePair& rates) {
  EerResult out;
  out.rates = rates;
  out.threshold = rates.tau;
  out.eer = (rates.p_fp + rates.p_fn) / 2.0;
  return out;
}

// Exhaustive threshold sweep over weighted scores. Between two adjacent
// distinct scores the rates are constant, so the candidates -inf, every
// distinct score, every midpoint and +inf visit every attainable rate pair.
//
// Prefix sums (FP side) run upward and suffix sums (FN side) run downward
// in score order; both depend only on the rank order of the scores.
EerResult sweep(std::vector<ClassSplit> entries) {
  if (entries.empty()) throw Error(ErrorKind::EmptyInput, "no scores to sweep");
  std::ranges::stable_sort(entries, {}, &ClassSplit::score);

  std::vector<std::size_t> group_begin;
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (k == 0 || entries[k].score != entries[k - 1].score) group_begin.push_back(k);
  const std::size_t groups = group_begin.size();
  group_begin.push_back(entries.size());

  // below[g]: negative weight of groups < g; above[g]: positive weight of groups >= g.
  std::vector<double> below(groups + 1, 0.0);
  std::vector<double> above(groups + 1, 0.0);
  for (std::size_t g = 0; g < groups; ++g) {
    double acc = below[g];
    for (std::size_t k = group_begin[g]; k < group_begin[g + 1]; ++k) acc += entries[k].negative;
    below[g + 1] = acc;
  }
  for (std::size_t g = groups; g-- > 0;) {
    double acc = above[g + 1];
    for (std::size_t k = group_begin[g]; k < group_begin[g + 1]; ++k) acc += entries[k].positive;
    above[g] = acc;
  }
  const double negatives = below[groups];
  const double positives = above[0];
  if (negatives <= 0.0 || positives <= 0.0)
    throw Error(ErrorKind::EmptyClass, "EER needs both bona fide and spoof data");

  // Rates when groups [0, g) are decided spoof.
  auto rates_with = [&](std::size_t g, double tau) {
    return RatePair{below[g] / negatives, above[g] / positives, tau};
  };

  RatePair best = rates_with(0, -kInf);
  std::size_t best_groups = 0;
  auto consider = [&](std::size_t g, double tau) {
    const RatePair r = rates_with(g, tau);
    if (gap_of(r) < gap_of(best) - kTieTolerance) {
      best = r;
      best_groups = g;
    }
  };
  for (std::size_t g = 0; g < groups; ++g) {
    const double score = entries[group_begin[g]].score;
    consider(g, score);
    if (g + 1 < groups) {
      consider(g + 1, std::midpoint(score, entries[group_begin[g + 1]].score));
    } else {
      consider(groups, kInf);
    }
  }

  EerResult out = at_threshold(best);
  out.converged = true;
  out.quantile = 100.0 * static_cast<double>(group_begin[best_groups]) /
                 static_cast<double>(entries.size());
  return out;
}

std::vector<ClassSplit> point_entries(const SegmentLabels& labels,
                                      std::span<const double> scores) {
  if (labels.labels.size() != scores.size())
    throw Error(ErrorKind::LengthMismatch, "labels and scores differ in length");
  std::vector<ClassSplit> entries;
  entries.reserve(scores.size());
  for (std::size_t m = 0; m < scores.size(); ++m) {
    const bool spoof = is_positive(labels.labels[m]);
    entries.push_back({scores[m], spoof ? 0.0 : 1.0, spoof ? 1.0 : 0.0});
  }
  return entries;
}

std::vector<double> quantile_thresholds(std::vector<double> sorted, std::size_t n_points) {
  if (n_points < 2) throw Error(ErrorKind::DomainError, "det sweep needs at least 2 points");
  std::vector<double> taus;
  taus.reserve(n_points);
  taus.push_back(-kInf);
  for (std::size_t k = 1; k + 1 < n_points; ++k) {
    const double q = 100.0 * static_cast<double>(k) / static_cast<double>(n_points - 1);
    taus.push_back(percentile(sorted, q));
  }
  taus.push_back(kInf);
  return taus;
}

}  // namespace

std::string_view to_string(QuantileMode mode) noexcept {
  return mode == QuantileMode::RealValued ? "real" : "integer-floor";
}

void SearchConfig::validate() const {
  if (!(prec > 0.0)) throw Error(ErrorKind::DomainError, "prec must be > 0");
  if (max_iterations < 1) throw Error(ErrorKind::DomainError, "max_iterations must be >= 1");
}

double percentile(std::span<const double> sorted_scores, double q) {
  if (sorted_scores.empty()) throw Error(ErrorKind::EmptyInput, "percentile of an empty list");
  if (!(q >= 0.0 && q <= 100.0))
    throw Error(ErrorKind::DomainError, "percentile q must lie in [0, 100]");
  const double pos = q / 100.0 * static_cast<double>(sorted_scores.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted_scores.size()) return sorted_scores.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted_scores[lo] + frac * (sorted_scores[lo + 1] - sorted_scores[lo]);
}

EerResult point_eer(const SegmentLabels& labels, std::span<const double> scores) {
  return sweep(point_entries(labels, scores));
}

EerResult point_eer(const PointSet& points) { return point_eer(points.labels, points.scores); }

EerResult brute_force_range_eer(const OverlapTable& table) {
  const auto entries = table.entries();
  return sweep({entries.begin(), entries.end()});
}

EerResult brute_force_range_eer(std::span<const Trial> trials) {
  const auto table = OverlapTable::build(trials);
  duration_totals(trials);
  return brute_force_range_eer(table);
}

EerResult range_eer_binary_search(const OverlapTable& table, const SearchConfig& config) {
  config.validate();
  const auto sorted = table.sorted_scores();
  if (sorted.empty()) throw Error(ErrorKind::EmptyInput, "no hypothesis scores");

  std::size_t evaluations = 0;
  auto rates_at = [&](double tau) {
    ++evaluations;
    return table.rates(tau);
  };
  auto middle = [&](double lo, double hi) {
    const double q = std::midpoint(lo, hi);
    return config.quantile_mode == QuantileMode::IntegerFloor ? std::floor(q) : q;
  };

  double q_left = 0.0;
  double q_right = 100.0;
  double tau_left = percentile(sorted, q_left);
  double tau_right = percentile(sorted, q_right);
  double q_mid = middle(q_left, q_right);
  double tau_mid = percentile(sorted, q_mid);
  RatePair left = rates_at(tau_left);
  RatePair mid = rates_at(tau_mid);

  bool converged = false;
  bool right_seen = false;  // rates at tau_right evaluated
  bool last_probe = false;
  int iterations = 0;
  while (tau_left <= tau_right) {
    if (std::abs(mid.gap()) < config.prec) {
      converged = true;
      break;
    }
    if (last_probe || iterations >= config.max_iterations) break;
    // The crossing lies between left and mid when their gaps differ in sign.
    if (left.gap() * mid.gap() <= 0.0) {
      tau_right = tau_mid;
      q_right = q_mid;
      right_seen = true;
    } else {
      tau_left = tau_mid;
      q_left = q_mid;
      left = mid;
    }
    const double q_next = middle(q_left, q_right);
    ++iterations;
    // Stall: with no pooled score strictly inside (tau_left, tau_right) every
    // further midpoint lands on one rate step, the one tau_right sits on. Stop,
    // after probing it once if tau_right was never evaluated.
    const auto inside = std::ranges::upper_bound(sorted, tau_left);
    if (inside == sorted.end() || *inside >= tau_right) {
      if (right_seen) break;
      last_probe = true;
    }
    if (q_next == q_mid) break;
    q_mid = q_next;
    tau_mid = percentile(sorted, q_mid);
    mid = rates_at(tau_mid);
  }

  EerResult out = at_threshold(mid);
  out.iterations = iterations;
  out.converged = converged;
  out.quantile = q_mid;
  out.rate_evaluations = evaluations;
  return out;
}

EerResult range_eer_binary_search(std::span<const Trial> trials, const SearchConfig& config) {
  const auto table = OverlapTable::build(trials);
  duration_totals(trials);
  return range_eer_binary_search(table, config);
}

std::vector<RatePair> det_sweep(const OverlapTable& table, std::size_t n_points) {
  std::vector<RatePair> out;
  for (double tau : quantile_thresholds(table.sorted_scores(), n_points))
    out.push_back(table.rates(tau));
  return out;
}

std::vector<RatePair> det_sweep(std::span<const Trial> trials, std::size_t n_points) {
  const auto table = OverlapTable::build(trials);
  duration_totals(trials);
  return det_sweep(table, n_points);
}

std::vector<RatePair> det_sweep(const PointSet& points, std::size_t n_points) {
  auto sorted = points.scores;
  std::ranges::sort(sorted);
  if (sorted.empty()) throw Error(ErrorKind::EmptyInput, "no scores");
  std::vector<RatePair> out;
  for (double tau : quantile_thresholds(std::move(sorted), n_points))
    out.push_back(point_rates(points.labels, points.scores, tau));
  return out;
}

}  // namespace rangeeer
