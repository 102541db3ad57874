#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "knapfeat/errors.hpp"
#include "knapfeat/instance.hpp"
#include "knapfeat/log_count.hpp"

namespace knapfeat {

/// Default cap on the number of entries of any capacity-indexed table.
inline constexpr std::int64_t kDefaultCapacityBudget = std::int64_t{1} << 27;

/// Per-weight counts of inclusionwise maximal solutions (IMSs): counts[k]
/// is the number of IMSs whose total weight is exactly k, in log form.
struct ImsWeightProfile {
  std::int64_t capacity = 0;
  std::vector<LogCount> counts;  // index 0..capacity; index 0 stays zero

  LogCount total() const {
    LogCount sum = LogCount::zero();
    for (const LogCount& c : counts) sum += c;
    return sum;
  }
};

/// Counts the IMSs of every total weight k in [1, c].
///
/// Sweeps the items from heaviest to lightest while maintaining, for each
/// weight k, the number of subsets of the already-passed items that sum
/// to k (the counting form of the subset-sum recursion, updated in place
/// from high k to low k). An IMS whose least heavy unselected item is i
/// selects everything after i, so its weight k satisfies
/// c+1-w_i <= k <= c and the part below i must sum to k minus the suffix
/// weight. O(n*c) time, O(c) space.
inline ImsWeightProfile number_ims_weight(const KnapsackInstance& inst,
                                          std::int64_t capacity_budget = kDefaultCapacityBudget) {
  const std::int64_t c = inst.capacity();
  if (c + 1 > capacity_budget)
    throw CapacityTooLarge("capacity " + std::to_string(c) +
                           " exceeds the table budget of " + std::to_string(capacity_budget) +
                           " entries");
  const std::size_t n = inst.size();

  ImsWeightProfile profile;
  profile.capacity = c;
  profile.counts.assign(static_cast<std::size_t>(c) + 1, LogCount::zero());
  std::vector<LogCount> subset_counts(static_cast<std::size_t>(c) + 1, LogCount::zero());

  std::int64_t suffix = inst.total_weight();
  for (std::size_t i = 0; i < n; ++i) {
    suffix -= inst.weight(i);  // weight of the items after i
    if (i == 0) {
      subset_counts[0] = LogCount::one();
    } else {
      const std::int64_t w_prev = inst.weight(i - 1);
      for (std::int64_t k = c; k >= w_prev; --k) {
        const LogCount shifted = subset_counts[static_cast<std::size_t>(k - w_prev)];
        if (!shifted.is_zero())
          subset_counts[static_cast<std::size_t>(k)] += shifted;
      }
    }
    // k = suffix contributes the empty below-i subset; anything below the
    // suffix weight is unreachable.
    const std::int64_t lo = std::max({c + 1 - inst.weight(i), suffix, std::int64_t{1}});
    for (std::int64_t k = lo; k <= c; ++k) {
      const LogCount part = subset_counts[static_cast<std::size_t>(k - suffix)];
      if (!part.is_zero())
        profile.counts[static_cast<std::size_t>(k)] += part;
    }
  }
  return profile;
}

/// Summary statistics of an IMS weight profile.
struct CountingFeatures {
  LogCount cardinality;       // number of IMSs
  std::int64_t min_weight = 0;
  std::int64_t max_weight = 0;
  double mean_weight = 0.0;
  double variance = 0.0;
  double t1_seconds = 0.0;    // wall time of number_ims_weight
};

inline CountingFeatures counting_features(const ImsWeightProfile& profile,
                                          double elapsed_seconds) {
  LogCount cardinality = LogCount::zero();
  LogCount weighted = LogCount::zero();  // sum of k * counts[k]
  std::int64_t min_weight = -1;
  std::int64_t max_weight = -1;
  for (std::int64_t k = 1; k <= profile.capacity; ++k) {
    const LogCount& count = profile.counts[static_cast<std::size_t>(k)];
    if (count.is_zero()) continue;
    cardinality += count;
    weighted += count * LogCount::of(static_cast<std::uint64_t>(k));
    if (min_weight < 0) min_weight = k;
    max_weight = k;
  }
  if (cardinality.is_zero()) throw EmptyProfile("weight profile has no support");

  CountingFeatures features;
  features.cardinality = cardinality;
  features.min_weight = min_weight;
  features.max_weight = max_weight;
  features.t1_seconds = elapsed_seconds;
  if (min_weight == max_weight) {
    features.mean_weight = static_cast<double>(min_weight);
    features.variance = 0.0;
    return features;
  }
  features.mean_weight = std::exp2(weighted.log2() - cardinality.log2());

  LogCount spread = LogCount::zero();  // sum of (k-mean)^2 * counts[k]
  for (std::int64_t k = min_weight; k <= max_weight; ++k) {
    const LogCount& count = profile.counts[static_cast<std::size_t>(k)];
    if (count.is_zero()) continue;
    const double delta = static_cast<double>(k) - features.mean_weight;
    spread += count * LogCount::of_real(delta * delta);
  }
  features.variance = spread.is_zero() ? 0.0 : std::exp2(spread.log2() - cardinality.log2());
  return features;
}

}  // namespace knapfeat
