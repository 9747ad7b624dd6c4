#include "rangeeer/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "rangeeer/error.hpp"

namespace rangeeer {

namespace {

constexpr double kMinRangeSeconds = 0.1;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidSpec, what);
}

// Boundaries are whole multiples of the hypothesis resolution, so each
// hypothesis segment lies inside one reference range.
std::vector<LabeledRange> draw_reference(const SynthSpec& spec, std::size_t n_segments,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> exp1(1.0);
  const double d = spec.hypothesis_resolution;
  const double spoof_mean = 2.0 * spec.mean_range_seconds * spec.spoof_fraction;
  const double bona_mean = 2.0 * spec.mean_range_seconds * (1.0 - spec.spoof_fraction);
  const auto min_segments =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kMinRangeSeconds / d - 1e-9)));

  std::vector<LabeledRange> ranges;
  Label label = unit(rng) < spec.spoof_fraction ? Label::Spoof : Label::BonaFide;
  std::size_t m = 0;
  while (m < n_segments) {
    const double mean = is_positive(label) ? spoof_mean : bona_mean;
    const auto drawn = static_cast<std::size_t>(std::llround(exp1(rng) * mean / d));
    const std::size_t len = std::clamp(drawn, std::min(min_segments, n_segments), n_segments);
    const std::size_t end = std::min(m + len, n_segments);
    ranges.push_back({static_cast<double>(m) * d, static_cast<double>(end) * d, label});
    m = end;
    label = is_positive(label) ? Label::BonaFide : Label::Spoof;
  }
  return ranges;
}

double distance_to_boundary(const std::vector<LabeledRange>& ref, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < ref.size(); ++i) best = std::min(best, std::abs(t - ref[i].end));
  return best;
}

}  // namespace

void SynthSpec::validate() const {
  require(n_trials >= 1, "n_trials must be >= 1");
  require(std::isfinite(min_seconds) && min_seconds >= kMinRangeSeconds,
          "min utterance length must be >= 0.1 s");
  require(std::isfinite(max_seconds) && max_seconds >= min_seconds,
          "max utterance length must be >= min utterance length");
  require(std::isfinite(mean_range_seconds) && mean_range_seconds > 0.0,
          "mean range length must be > 0");
  require(spoof_fraction > 0.0 && spoof_fraction < 1.0, "spoof fraction must lie in (0, 1)");
  require(std::isfinite(score_model.separation) && score_model.separation >= 0.0,
          "separation must be >= 0");
  require(std::isfinite(score_model.noise_sd) && score_model.noise_sd >= 0.0,
          "noise sd must be >= 0");
  require(std::isfinite(score_model.boundary_seconds) && score_model.boundary_seconds >= 0.0,
          "boundary width must be >= 0");
  require(std::isfinite(score_model.boundary_noise_sd) && score_model.boundary_noise_sd >= 0.0,
          "boundary noise sd must be >= 0");
  require(std::isfinite(hypothesis_resolution) && hypothesis_resolution > 0.0,
          "hypothesis resolution must be > 0");
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(0x5851f42d4c957f2dULL + index));
}

Trial generate_trial(const SynthSpec& spec, std::size_t index) {
  std::mt19937_64 rng(trial_seed(spec.seed, index));
  std::uniform_real_distribution<double> length_dist(spec.min_seconds, spec.max_seconds);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double length =
      spec.max_seconds > spec.min_seconds ? length_dist(rng) : spec.min_seconds;
  const double d = spec.hypothesis_resolution;
  const auto n_segments =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(length / d)));
  Trial trial;
  char id[32];
  std::snprintf(id, sizeof id, "synth_%06zu", index);
  trial.trial_id = id;
  trial.reference = draw_reference(spec, n_segments, rng);

  const auto labels = segment_reference(trial.reference, d, LabelRule::AnySpoof).labels;
  const auto& model = spec.score_model;
  UniformScores hyp{d, {}};
  hyp.scores.reserve(labels.size());
  for (std::size_t m = 0; m < labels.size(); ++m) {
    const double centre = (static_cast<double>(m) + 0.5) * d;
    const double z = gauss(rng);
    if (model.boundary_seconds > 0.0 &&
        distance_to_boundary(trial.reference, centre) <= model.boundary_seconds) {
      hyp.scores.push_back(model.boundary_noise_sd * z);
    } else {
      const double mean = is_positive(labels[m]) ? -model.separation / 2.0
                                                 : model.separation / 2.0;
      hyp.scores.push_back(mean + model.noise_sd * z);
    }
  }
  trial.hypothesis = ScoreTrack(std::move(hyp));
  return trial;
}

Dataset generate(const SynthSpec& spec) {
  spec.validate();
  Dataset out(spec.n_trials);
  const auto n = static_cast<std::ptrdiff_t>(spec.n_trials);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    out[static_cast<std::size_t>(t)] = generate_trial(spec, static_cast<std::size_t>(t));
  return out;
}

std::string describe(const SynthSpec& spec) {
  std::ostringstream out;
  out << "# synthetic partially spoofed dataset\n"
      << "# seed=" << spec.seed << " n_trials=" << spec.n_trials
      << " utterance_seconds=[" << spec.min_seconds << "," << spec.max_seconds << "]\n"
      << "# range lengths: exponential, mean_range_seconds=" << spec.mean_range_seconds
      << " spoof_fraction=" << spec.spoof_fraction
      << ", clamped to [0.1 s, utterance], boundaries on the score grid\n"
      << "# scores: separation=" << spec.score_model.separation
      << " noise_sd=" << spec.score_model.noise_sd
      << " boundary_seconds=" << spec.score_model.boundary_seconds
      << " boundary_noise_sd=" << spec.score_model.boundary_noise_sd
      << " resolution=" << spec.hypothesis_resolution << "\n";
  return out.str();
}

}  // namespace rangeeer
