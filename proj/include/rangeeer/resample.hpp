#pragma once

#include <cstddef>

#include "rangeeer/timeline.hpp"

namespace rangeeer {

struct ResampleSpec {
  double source_resolution = 0.0;
  double target_resolution = 0.0;
};

/// k such that coarse == k * fine (relative tolerance 1e-9); throws
/// NonIntegerRatio otherwise and DomainError for non-positive inputs.
std::size_t integer_ratio(double coarse, double fine);

/// Finer resolution: every score is repeated k times.
UniformScores upsample(const UniformScores& track, const ResampleSpec& spec);

/// Coarser resolution: each group of k scores becomes its minimum, since a
/// lower score is the stronger spoof decision. A trailing short group is
/// reduced over the scores it has.
UniformScores downsample(const UniformScores& track, const ResampleSpec& spec);

/// Picks upsample or downsample from the direction of the spec.
UniformScores resample(const UniformScores& track, const ResampleSpec& spec);

}  // namespace rangeeer
