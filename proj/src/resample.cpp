#include "rangeeer/resample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rangeeer/error.hpp"

namespace rangeeer {

namespace {

void check_source(const UniformScores& track, const ResampleSpec& spec) {
  if (track.resolution != spec.source_resolution) {
    std::ostringstream msg;
    msg << "track resolution " << track.resolution << " differs from source resolution "
        << spec.source_resolution;
    throw Error(ErrorKind::DomainError, msg.str());
  }
}

}  // namespace

std::size_t integer_ratio(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine))
    throw Error(ErrorKind::DomainError, "resolutions must be positive and finite");
  const double ratio = coarse / fine;
  const double k = std::round(ratio);
  if (k < 1.0 || std::abs(ratio - k) > 1e-9 * k) {
    std::ostringstream msg;
    msg << "resolution " << coarse << " is not an integer multiple of " << fine;
    throw Error(ErrorKind::NonIntegerRatio, msg.str());
  }
  return static_cast<std::size_t>(k);
}

UniformScores upsample(const UniformScores& track, const ResampleSpec& spec) {
  check_source(track, spec);
  const std::size_t k = integer_ratio(spec.source_resolution, spec.target_resolution);
  UniformScores out{spec.target_resolution, {}};
  out.scores.reserve(track.scores.size() * k);
  for (double s : track.scores) out.scores.insert(out.scores.end(), k, s);
  return out;
}

UniformScores downsample(const UniformScores& track, const ResampleSpec& spec) {
  check_source(track, spec);
  const std::size_t k = integer_ratio(spec.target_resolution, spec.source_resolution);
  UniformScores out{spec.target_resolution, {}};
  out.scores.reserve((track.scores.size() + k - 1) / k);
  for (std::size_t begin = 0; begin < track.scores.size(); begin += k) {
    const auto first = track.scores.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = track.scores.begin() +
                      static_cast<std::ptrdiff_t>(std::min(begin + k, track.scores.size()));
    out.scores.push_back(*std::min_element(first, last));
  }
  return out;
}

UniformScores resample(const UniformScores& track, const ResampleSpec& spec) {
  if (spec.target_resolution < spec.source_resolution) return upsample(track, spec);
  return downsample(track, spec);
}

}  // namespace rangeeer
