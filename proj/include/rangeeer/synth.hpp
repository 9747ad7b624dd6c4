#pragma once

// Seeded generator of synthetic partially spoofed trials.
//
// Each utterance is partitioned into alternating bona fide / spoof ranges
// with exponential lengths clamped to [0.1 s, utterance length] and rounded
// to whole hypothesis segments, so every boundary lies on the score grid.
// Spoof and bona fide ranges use means 2*f*mean and 2*(1-f)*mean, so the
// expected spoof share of time is f. Hypothesis scores are uniform-rate: bona fide
// segments draw around +separation/2, spoof around -separation/2, each with
// Gaussian noise. Segments whose centre lies within `boundary_seconds` of a
// class change draw from N(0, boundary_noise_sd) instead, which models a
// detector that cannot place boundaries precisely.

#include <cstddef>
#include <cstdint>
#include <string>

#include "rangeeer/timeline.hpp"

namespace rangeeer {

struct ScoreModel {
  double separation = 2.0;
  double noise_sd = 1.0;
  double boundary_seconds = 0.0;
  double boundary_noise_sd = 1.0;
};

struct SynthSpec {
  std::uint64_t seed = 42;
  std::size_t n_trials = 100;
  double min_seconds = 2.0;
  double max_seconds = 6.0;
  double mean_range_seconds = 1.0;
  double spoof_fraction = 0.5;
  ScoreModel score_model;
  double hypothesis_resolution = 0.02;

  /// Throws InvalidSpec.
  void validate() const;
};

/// Seed of trial `index`, a pure function of (seed, index).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) noexcept;

Trial generate_trial(const SynthSpec& spec, std::size_t index);
Dataset generate(const SynthSpec& spec);

/// '#'-prefixed lines describing the generator settings.
std::string describe(const SynthSpec& spec);

}  // namespace rangeeer
