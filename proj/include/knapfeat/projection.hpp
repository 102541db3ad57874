#pragma once

#include <array>
#include <span>

#include "knapfeat/errors.hpp"

namespace knapfeat {

inline constexpr std::size_t kProjectionInputCount = 9;

/// Inputs of the fixed instance-space projection, in matrix row order.
/// The first five are normalized features of this library; the last four
/// come from an external feature set and must be supplied by the caller.
inline constexpr std::array<const char*, kProjectionInputCount> kProjectionInputNames = {
    "counting_seconds",
    "clustering_seconds",
    "cardinality_seconds",
    "split_rank",
    "min_ims_weight",
    "first_weight",
    "smaller_better_pairs",
    "reduced_max_cardinality",
    "reduced_polyfit_linear",
};

/// Fixed 9x2 projection from normalized feature space to the 2D instance
/// space (z1, z2).
inline constexpr double kProjectionMatrix[kProjectionInputCount][2] = {
    {0.2899, -0.2316},   // counting_seconds
    {0.2924, -0.2034},   // clustering_seconds
    {-0.3407, -0.2515},  // cardinality_seconds
    {0.1679, -0.5357},   // split_rank
    {0.2802, -0.3762},   // min_ims_weight
    {-0.0796, -0.5672},  // first_weight
    {0.4686, 0.6227},    // smaller_better_pairs
    {0.3397, -0.3426},   // reduced_max_cardinality
    {-0.5083, 0.0148},   // reduced_polyfit_linear
};

struct ProjectionPoint {
  double z1 = 0.0;
  double z2 = 0.0;
};

inline ProjectionPoint project(const std::array<double, kProjectionInputCount>& features) {
  ProjectionPoint point;
  for (std::size_t i = 0; i < kProjectionInputCount; ++i) {
    point.z1 += kProjectionMatrix[i][0] * features[i];
    point.z2 += kProjectionMatrix[i][1] * features[i];
  }
  return point;
}

}  // namespace knapfeat
