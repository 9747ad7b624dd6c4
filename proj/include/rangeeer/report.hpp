#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "rangeeer/eer.hpp"

namespace rangeeer {

struct OracleCheck {
  double eer = 0.0;
  double threshold = 0.0;
  double abs_diff = 0.0;

  bool operator==(const OracleCheck&) const = default;
};

/// Self-describing result of one evaluation. Non-finite thresholds are
/// written as the strings "inf" / "-inf".
struct ResultReport {
  std::string mode;
  double eer = 0.0;
  double threshold = 0.0;
  double p_fp = 0.0;
  double p_fn = 0.0;
  int iterations = 0;
  bool converged = false;
  double d_negative = 0.0;
  double d_positive = 0.0;
  std::size_t trial_count = 0;
  nlohmann::json config = nlohmann::json::object();
  std::optional<OracleCheck> oracle;

  bool operator==(const ResultReport&) const = default;
};

ResultReport make_report(Measure mode, const EerResult& result,
                         const DurationTotals& totals, std::size_t trial_count);

void to_json(nlohmann::json& j, const ResultReport& report);
void from_json(const nlohmann::json& j, ResultReport& report);

/// Pretty-printed JSON followed by a newline.
std::string render(const ResultReport& report);

}  // namespace rangeeer
