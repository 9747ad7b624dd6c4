#include "rangeeer/report.hpp"

#include <cmath>
#include <limits>

namespace rangeeer {

namespace {

nlohmann::json threshold_json(double tau) {
  if (std::isinf(tau)) return tau > 0 ? "inf" : "-inf";
  return tau;
}

double threshold_from(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw nlohmann::json::other_error::create(501, "bad threshold '" + s + "'", &j);
  }
  return j.get<double>();
}

}  // namespace

ResultReport make_report(Measure mode, const EerResult& result,
                         const DurationTotals& totals, std::size_t trial_count) {
  ResultReport r;
  r.mode = std::string(to_string(mode));
  r.eer = result.eer;
  r.threshold = result.threshold;
  r.p_fp = result.rates.p_fp;
  r.p_fn = result.rates.p_fn;
  r.iterations = result.iterations;
  r.converged = result.converged;
  r.d_negative = totals.d_negative;
  r.d_positive = totals.d_positive;
  r.trial_count = trial_count;
  return r;
}

void to_json(nlohmann::json& j, const ResultReport& r) {
  j = nlohmann::json{
      {"mode", r.mode},
      {"eer", r.eer},
      {"threshold", threshold_json(r.threshold)},
      {"p_fp", r.p_fp},
      {"p_fn", r.p_fn},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"d_negative", r.d_negative},
      {"d_positive", r.d_positive},
      {"trial_count", r.trial_count},
      {"config", r.config},
  };
  if (r.oracle) {
    j["oracle"] = {{"eer", r.oracle->eer},
                   {"threshold", threshold_json(r.oracle->threshold)},
                   {"abs_diff", r.oracle->abs_diff}};
  }
}

void from_json(const nlohmann::json& j, ResultReport& r) {
  r.mode = j.at("mode").get<std::string>();
  r.eer = j.at("eer").get<double>();
  r.threshold = threshold_from(j.at("threshold"));
  r.p_fp = j.at("p_fp").get<double>();
  r.p_fn = j.at("p_fn").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.converged = j.at("converged").get<bool>();
  r.d_negative = j.at("d_negative").get<double>();
  r.d_positive = j.at("d_positive").get<double>();
  r.trial_count = j.at("trial_count").get<std::size_t>();
  r.config = j.at("config");
  r.oracle.reset();
  if (j.contains("oracle")) {
    const auto& o = j.at("oracle");
    r.oracle = OracleCheck{o.at("eer").get<double>(), threshold_from(o.at("threshold")),
                           o.at("abs_diff").get<double>()};
  }
}

std::string render(const ResultReport& report) {
  return nlohmann::json(report).dump(2) + "\n";
}

}  // namespace rangeeer
