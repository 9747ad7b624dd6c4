#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rangeeer/metrics.hpp"
#include "rangeeer/overlap_table.hpp"
#include "rangeeer/timeline.hpp"

namespace rangeeer {

enum class QuantileMode {
  RealValued,    // midpoint quantile (Ql + Qr) / 2
  IntegerFloor,  // floor((Ql + Qr) / 2); may stall, guarded by max_iterations
};

std::string_view to_string(QuantileMode mode) noexcept;

struct SearchConfig {
  double prec = 1e-5;
  int max_iterations = 200;
  QuantileMode quantile_mode = QuantileMode::RealValued;

  /// Throws DomainError on prec <= 0 or max_iterations < 1.
  void validate() const;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  RatePair rates;
  int iterations = 0;
  bool converged = false;
  double quantile = 0.0;            // quantile of the final threshold, in [0, 100]
  std::size_t rate_evaluations = 0;  // full passes over the data
};

/// Two minimizers of |p_fp - p_fn| closer than this are a tie, resolved
/// toward the smaller threshold.
inline constexpr double kTieTolerance = 1e-12;

/// Linear-interpolation percentile of an ascending list, q in [0, 100].
double percentile(std::span<const double> sorted_scores, double q);

/// Exact point-based EER by sweeping every distinct threshold.
EerResult point_eer(const SegmentLabels& labels, std::span<const double> scores);
EerResult point_eer(const PointSet& points);

/// Range-based EER by bisection over score quantiles. Non-convergence is
/// reported through `converged`, not thrown.
EerResult range_eer_binary_search(std::span<const Trial> trials,
                                  const SearchConfig& config = {});
EerResult range_eer_binary_search(const OverlapTable& table,
                                  const SearchConfig& config = {});

/// Exact range-based EER over every candidate threshold. Used as the
/// reference for the bisection.
EerResult brute_force_range_eer(std::span<const Trial> trials);
EerResult brute_force_range_eer(const OverlapTable& table);

/// Rates at n_points thresholds: -inf, evenly spaced score quantiles, +inf.
std::vector<RatePair> det_sweep(const OverlapTable& table, std::size_t n_points);
std::vector<RatePair> det_sweep(std::span<const Trial> trials, std::size_t n_points);
std::vector<RatePair> det_sweep(const PointSet& points, std::size_t n_points);

}  // namespace rangeeer
