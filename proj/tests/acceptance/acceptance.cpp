// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "oracle.hpp"
#include "rangeeer/cli.hpp"
#include "rangeeer/eer.hpp"
#include "rangeeer/metrics.hpp"
#include "rangeeer/overlap_table.hpp"
#include "rangeeer/resample.hpp"
#include "rangeeer/synth.hpp"

namespace {

using namespace rangeeer;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// Applies f to every hypothesis score.
void transform_scores(Dataset& trials, const std::function<double(double)>& f) {
  for (auto& t : trials) {
    if (t.hypothesis.is_uniform()) {
      auto u = t.hypothesis.uniform();
      for (auto& s : u.scores) s = f(s);
      t.hypothesis = ScoreTrack(std::move(u));
    } else {
      auto r = t.hypothesis.ranged();
      for (auto& h : r.ranges) h.score = f(h.score);
      t.hypothesis = ScoreTrack(std::move(r));
    }
  }
}

Dataset upsampled(Dataset trials, std::size_t k) {
  for (auto& t : trials) {
    const auto& u = t.hypothesis.uniform();
    t.hypothesis = ScoreTrack(upsample(u, {u.resolution, u.resolution / static_cast<double>(k)}));
  }
  return trials;
}

Dataset downsampled(Dataset trials, std::size_t k) {
  for (auto& t : trials) {
    const auto& u = t.hypothesis.uniform();
    t.hypothesis = ScoreTrack(downsample(u, {u.resolution, u.resolution * static_cast<double>(k)}));
  }
  return trials;
}

// Randomized synthetic dataset for the oracle and crossing criteria.
SynthSpec oracle_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 1);
  SynthSpec spec;
  spec.seed = seed;
  spec.n_trials = static_cast<std::size_t>(
      std::round(std::exp(std::uniform_real_distribution<double>(std::log(10.0),
                                                                 std::log(2000.0))(rng))));
  spec.hypothesis_resolution =
      0.02 * static_cast<double>(1 << std::uniform_int_distribution<int>(0, 5)(rng));
  spec.min_seconds = 1.0;
  spec.max_seconds = 5.0;
  spec.mean_range_seconds = std::uniform_real_distribution<double>(0.3, 2.0)(rng);
  spec.spoof_fraction = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
  spec.score_model.separation = std::uniform_real_distribution<double>(0.5, 4.0)(rng);
  spec.score_model.noise_sd = 1.0;
  return spec;
}

struct CrossingTally {
  std::size_t tested = 0;
  std::size_t violations = 0;
  std::size_t flat_step = 0;  // on tau-hat's own rate step
};

// Thresholds: score quantiles plus the scores and midpoints around tau-hat.
void check_crossing(const OverlapTable& table, const EerResult& exact, CrossingTally& tally) {
  const auto sorted = table.sorted_scores();
  std::vector<double> taus{-kInf, kInf};
  for (int k = 0; k <= 100; ++k) taus.push_back(percentile(sorted, k));
  auto it = std::lower_bound(sorted.begin(), sorted.end(), exact.threshold);
  const auto lo = it - std::min<std::ptrdiff_t>(it - sorted.begin(), 8);
  const auto hi = it + std::min<std::ptrdiff_t>(sorted.end() - it, 8);
  for (auto p = lo; p != hi; ++p) {
    taus.push_back(*p);
    if (p + 1 != sorted.end()) taus.push_back(std::midpoint(*p, *(p + 1)));
  }
  const auto at_hat = table.rates(exact.threshold);
  for (double tau : taus) {
    if (tau == exact.threshold) continue;
    const auto r = table.rates(tau);
    ++tally.tested;
    if (r.p_fp == at_hat.p_fp && r.p_fn == at_hat.p_fn) {
      ++tally.flat_step;
    } else if (tau < exact.threshold ? r.gap() > 0 : r.gap() < 0) {
      ++tally.violations;
    }
  }
}

CrossingTally g_crossing;

Outcome criterion1() {
  const auto t0 = Clock::now();
  constexpr int kDatasets = 200;
  int converged = 0, agree = 0, runs = 0, reachable = 0;
  double worst = 0;
  for (int seed = 0; seed < kDatasets; ++seed) {
    const auto spec = oracle_spec(static_cast<std::uint64_t>(seed));
    const auto trials = generate(spec);
    if (!testing::has_both_classes(trials)) continue;
    const auto table = OverlapTable::build(trials);
    const auto r = range_eer_binary_search(table);
    const auto exact = brute_force_range_eer(table);
    ++runs;
    // No threshold at all gets |p_fp - p_fn| under prec unless the oracle's does.
    reachable += std::abs(exact.rates.gap()) < SearchConfig{}.prec;
    if (r.converged) {
      ++converged;
      const double diff = std::abs(r.eer - exact.eer);
      worst = std::max(worst, diff);
      if (diff <= 1e-5) ++agree;
    }
    check_crossing(table, exact, g_crossing);
  }
  const double elapsed = seconds_since(t0);
  const double rate = runs ? static_cast<double>(converged) / runs : 0.0;
  std::ostringstream d;
  d << runs << " datasets, converged " << converged << " (" << 100 * rate
    << "%), agree when converged " << agree << "/" << converged << " (max diff " << worst
    << "), " << elapsed << " s; some threshold reaches |gap| < prec in only " << reachable
    << " datasets";
  return {runs >= 200 && agree == converged && rate >= 0.99 && elapsed <= 60, d.str()};
}

// Reference and uniform hypothesis on the same grid.
Dataset grid_dataset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double d = 0.02 * static_cast<double>(1 << (seed % 6));
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset out;
  for (int i = 0; i < 40; ++i) {
    const int n = std::uniform_int_distribution<int>(3, 60)(rng);
    std::vector<LabeledRange> ref;
    UniformScores hyp{d, {}};
    Label label = std::bernoulli_distribution(0.5)(rng) ? Label::Spoof : Label::BonaFide;
    int m = 0;
    while (m < n) {
      const int len = std::min(n - m, std::uniform_int_distribution<int>(1, 12)(rng));
      ref.push_back({m * d, (m + len) * d, label});
      for (int k = 0; k < len; ++k)
        hyp.scores.push_back((is_positive(label) ? -0.8 : 0.8) + noise(rng));
      m += len;
      label = is_positive(label) ? Label::BonaFide : Label::Spoof;
    }
    out.push_back({"g" + std::to_string(i), std::move(ref), ScoreTrack(std::move(hyp))});
  }
  return out;
}

Outcome criterion2() {
  int pass = 0, runs = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; runs < 50; ++seed) {
    const auto trials = grid_dataset(seed);
    if (!testing::has_both_classes(trials)) continue;
    ++runs;
    const double d = trials.front().hypothesis.uniform().resolution;
    const double point = point_eer(segment_dataset(trials, d, LabelRule::AnySpoof)).eer;
    const double range = brute_force_range_eer(trials).eer;
    worst = std::max(worst, std::abs(point - range));
    if (std::abs(point - range) <= 1e-12) ++pass;
  }
  std::ostringstream d;
  d << pass << "/" << runs << " grid datasets equal (max diff " << worst << ")";
  return {pass == runs, d.str()};
}

Outcome criterion3() {
  int bad = 0, endpoints_bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.5, 3.5);
    std::vector<double> taus;
    for (int k = 0; k < 50; ++k) taus.push_back(u(rng));
    std::sort(taus.begin(), taus.end());

    // range mode, mixed uniform and ranged hypotheses
    auto trials = testing::random_dataset(seed, 20, seed % 3 == 0 ? 4 : 0);
    if (testing::has_both_classes(trials)) {
      const auto table = OverlapTable::build(trials);
      RatePair prev = table.rates(-kInf);
      endpoints_bad += !(prev.p_fp == 0.0 && prev.p_fn == 1.0);
      for (double tau : taus) {
        const auto r = table.rates(tau);
        bad += r.p_fp < prev.p_fp || r.p_fn > prev.p_fn;
        prev = r;
      }
      const auto top = table.rates(kInf);
      endpoints_bad += !(top.p_fp == 1.0 && top.p_fn == 0.0);
    }

    // point mode
    SynthSpec spec;
    spec.seed = seed;
    spec.n_trials = 20;
    spec.hypothesis_resolution = 0.02 * static_cast<double>(1 << (seed % 5));
    const auto points = segment_dataset(generate(spec), spec.hypothesis_resolution);
    RatePair prev = point_rates(points.labels, points.scores, -kInf);
    endpoints_bad += !(prev.p_fp == 0.0 && prev.p_fn == 1.0);
    for (double tau : taus) {
      const auto r = point_rates(points.labels, points.scores, tau);
      bad += r.p_fp < prev.p_fp || r.p_fn > prev.p_fn;
      prev = r;
    }
    const auto top = point_rates(points.labels, points.scores, kInf);
    endpoints_bad += !(top.p_fp == 1.0 && top.p_fn == 0.0);
  }
  std::ostringstream d;
  d << bad << " monotonicity violations, " << endpoints_bad << " endpoint mismatches";
  return {bad == 0 && endpoints_bad == 0, d.str()};
}

Outcome criterion4() {
  std::ostringstream d;
  d << g_crossing.tested << " thresholds tested on the criterion-1 datasets, "
    << g_crossing.violations << " violations (" << g_crossing.flat_step
    << " on tau-hat's own rate step, counted as tau-hat)";
  return {g_crossing.tested > 0 && g_crossing.violations == 0, d.str()};
}

Outcome criterion5() {
  const std::vector<std::pair<const char*, std::function<double(double)>>> transforms{
      {"2x+1", [](double x) { return 2 * x + 1; }}, {"tanh", [](double x) { return std::tanh(x); }}};
  double worst = 0;
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto ranged = testing::random_dataset(seed, 25, seed % 2 ? 3 : 0);
    SynthSpec spec;
    spec.seed = seed;
    spec.n_trials = 30;
    spec.score_model.separation = 1.5;
    auto uniform = generate(spec);
    if (!testing::has_both_classes(ranged)) continue;
    ++runs;
    const double base_range = brute_force_range_eer(ranged).eer;
    const double base_point = point_eer(segment_dataset(uniform, 0.02)).eer;
    for (const auto& [name, f] : transforms) {
      auto r = ranged;
      auto u = uniform;
      transform_scores(r, f);
      transform_scores(u, f);
      worst = std::max(worst, std::abs(brute_force_range_eer(r).eer - base_range));
      worst = std::max(worst, std::abs(point_eer(segment_dataset(u, 0.02)).eer - base_point));
    }
  }
  std::ostringstream d;
  d << runs << " datasets x {2x+1, tanh} x {point, range}, max change " << worst;
  return {worst <= 1e-12, d.str()};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  int round_trip_bad = 0, min_bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t ratio = std::uniform_int_distribution<std::size_t>(1, 32)(rng);
    const double coarse = 0.02 * static_cast<double>(std::uniform_int_distribution<int>(1, 32)(rng));
    const double fine = coarse / static_cast<double>(ratio);
    UniformScores track{coarse, {}};
    const int n = std::uniform_int_distribution<int>(1, 200)(rng);
    for (int m = 0; m < n; ++m) track.scores.push_back(g(rng));
    const auto up = upsample(track, {coarse, fine});
    const auto back = downsample(up, {fine, coarse});
    round_trip_bad += back.scores != track.scores;

    const std::size_t group = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
    const auto down = downsample(track, {coarse, coarse * static_cast<double>(group)});
    for (std::size_t j = 0; j < down.scores.size(); ++j) {
      const auto first = track.scores.begin() + static_cast<std::ptrdiff_t>(j * group);
      const auto last = track.scores.begin() +
                        static_cast<std::ptrdiff_t>(std::min((j + 1) * group, track.scores.size()));
      min_bad += down.scores[j] != *std::min_element(first, last);
    }
  }
  std::ostringstream d;
  d << "1000 tracks: " << round_trip_bad << " round-trip mismatches, " << min_bad
    << " group-minimum mismatches";
  return {round_trip_bad == 0 && min_bad == 0, d.str()};
}

Outcome criterion7() {
  constexpr double kRes = 0.02;
  int holds = 0, point_ok = 0, range_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthSpec spec;
    spec.seed = 1000 + seed;
    spec.n_trials = 100;
    spec.hypothesis_resolution = kRes;
    spec.score_model = {4.0, 0.5, 4 * kRes, 1.0};
    const auto trials = generate(spec);

    bool monotone = true;
    double prev = kInf;
    for (std::size_t k : {1, 2, 4, 8}) {
      const double res = kRes * static_cast<double>(k);
      const double eer =
          point_eer(segment_dataset(k == 1 ? trials : downsampled(trials, k), res)).eer;
      monotone &= eer <= prev;
      prev = eer;
    }
    const double range = brute_force_range_eer(trials).eer;
    bool invariant = true;
    for (std::size_t k : {2, 4})
      invariant &= std::abs(brute_force_range_eer(upsampled(trials, k)).eer - range) <= 1e-12;

    point_ok += monotone;
    range_ok += invariant;
    holds += monotone && invariant;
  }
  std::ostringstream d;
  d << "pattern holds in " << holds << "/100 seeds (point EER non-increasing over d,2d,4d,8d: "
    << point_ok << ", range EER invariant: " << range_ok << ")";
  return {holds >= 95, d.str()};
}

Outcome criterion8() {
  SynthSpec spec;
  spec.seed = 8;
  spec.n_trials = 5200;
  spec.score_model.separation = 1.0;
  auto trials = generate(spec);
  const auto t0 = Clock::now();
  const auto table = OverlapTable::build(trials);
  const auto r = range_eer_binary_search(table);
  const double search_s = seconds_since(t0);
  const auto t1 = Clock::now();
  const auto exact = brute_force_range_eer(table);
  const double brute_s = seconds_since(t1);
  std::ostringstream d;
  d << table.entries().size() << " pooled entries, " << r.rate_evaluations
    << " rate evaluations, search " << search_s << " s (converged " << r.converged
    << ", eer " << r.eer << "), brute force " << brute_s << " s (eer " << exact.eer << ")";
  return {table.entries().size() >= 1000000 && r.rate_evaluations <= 40 && search_s <= 5.0 &&
              std::isfinite(exact.eer),
          d.str()};
}

std::string eval_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome criterion9() {
  const std::string dir = RANGEEER_FIXTURES;
  struct Case {
    std::string stem;
    std::vector<std::string> extra;
  };
  const std::vector<Case> cases{
      {"five_second", {"--oracle"}},
      {"five_second", {"--mode", "point", "--resolution", "1"}},
      {"grid", {"--oracle"}},
      {"grid", {"--mode", "point", "--resolution", "0.04"}},
      {"separated", {"--oracle"}},
  };
  int identical = 0;
  const int threads = std::max(4, omp_get_num_procs());
  for (const auto& c : cases) {
    std::vector<std::string> args{"eval", dir + "/" + c.stem + ".ref.tsv",
                                  dir + "/" + c.stem + ".scores.tsv"};
    args.insert(args.end(), c.extra.begin(), c.extra.end());
    auto with_threads = [&](int n) {
      auto a = args;
      a.insert(a.end(), {"--threads", std::to_string(n)});
      return eval_output(a);
    };
    const auto first = with_threads(1);
    identical += first.rfind("0\n", 0) == 0 && first == with_threads(1) &&
                 first == with_threads(threads);
  }
  std::ostringstream d;
  d << identical << "/" << cases.size() << " fixture reports identical across runs and 1 vs "
    << threads << " threads";
  return {identical == static_cast<int>(cases.size()), d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"oracle equivalence", criterion1},  {"point/range reduction", criterion2},
      {"monotonicity", criterion3},        {"crossing", criterion4},
      {"transform invariance", criterion5}, {"resampling identities", criterion6},
      {"resolution structure", criterion7}, {"convergence cost", criterion8},
      {"determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto [name, fn] = criteria[i];
    const auto outcome = fn();
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, name, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    failed += !outcome.pass;
  }
  return failed == 0 ? 0 : 1;
}
