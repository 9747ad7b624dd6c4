// Serial vs OpenMP range-rate kernel, and bisection vs exhaustive sweep.
//
//   rangeeer_bench [n_trials] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "rangeeer/eer.hpp"
#include "rangeeer/overlap_table.hpp"
#include "rangeeer/synth.hpp"

using namespace rangeeer;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n_trials = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 40;

  SynthSpec spec;
  spec.n_trials = n_trials;
  spec.score_model = {1.5, 1.0, 0.0, 1.0};

  auto t0 = std::chrono::steady_clock::now();
  const auto trials = generate(spec);
  const auto table = OverlapTable::build(trials);
  std::printf("threads=%d trials=%zu entries=%zu setup=%.3fs\n", omp_get_max_threads(),
              table.trial_count(), table.entries().size(), seconds_since(t0));

  const auto sorted = table.sorted_scores();
  double checksum_serial = 0.0;
  double checksum_omp = 0.0;
  bool identical = true;

  t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < repeats; ++k) {
    const double tau = percentile(sorted, 100.0 * (k + 0.5) / repeats);
    checksum_serial += table.rates_serial(tau).gap();
  }
  const double serial_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < repeats; ++k) {
    const double tau = percentile(sorted, 100.0 * (k + 0.5) / repeats);
    checksum_omp += table.rates(tau).gap();
  }
  const double omp_s = seconds_since(t0);

  for (int k = 0; k < repeats; ++k) {
    const double tau = percentile(sorted, 100.0 * (k + 0.5) / repeats);
    const auto a = table.rates(tau);
    const auto b = table.rates_serial(tau);
    identical = identical && a.p_fp == b.p_fp && a.p_fn == b.p_fn;
  }

  std::printf("%-24s %10s %12s\n", "kernel", "seconds", "per-eval ms");
  std::printf("%-24s %10.4f %12.4f\n", "rates_serial", serial_s, 1e3 * serial_s / repeats);
  std::printf("%-24s %10.4f %12.4f\n", "rates (openmp)", omp_s, 1e3 * omp_s / repeats);
  std::printf("bit-identical=%s checksum diff=%g\n", identical ? "yes" : "NO",
              checksum_serial - checksum_omp);

  t0 = std::chrono::steady_clock::now();
  const auto bisect = range_eer_binary_search(table);
  const double bisect_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto exact = brute_force_range_eer(table);
  const double exact_s = seconds_since(t0);
  std::printf("%-24s %10.4f eer=%.8f evals=%zu converged=%d\n", "binary search", bisect_s,
              bisect.eer, bisect.rate_evaluations, bisect.converged);
  std::printf("%-24s %10.4f eer=%.8f\n", "brute force", exact_s, exact.eer);
  return identical ? 0 : 1;
}
