#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knapfeat/clustering.hpp"
#include "knapfeat/errors.hpp"
#include "knapfeat/ims_counting.hpp"
#include "knapfeat/instance.hpp"

namespace knapfeat {

/// One weight group of the bounded-knapsack relaxation: up to `size`
/// copies, each counted at the group's heaviest weight in the objective
/// but at its lightest weight in the capacity constraint.
struct BoundedGroup {
  std::int64_t heaviest = 0;
  std::int64_t lightest = 0;
  std::int64_t size = 0;
};

/// max sum(heaviest_i * n_i) subject to sum(lightest_i * n_i) <= capacity
/// and 0 <= n_i <= size_i, integer. Solved exactly by splitting each
/// multiplicity into binary chunks and running the 0-1 sweep over
/// capacities, O(capacity * sum(log size_i)).
inline std::int64_t bounded_knapsack_max(std::span<const BoundedGroup> groups,
                                         std::int64_t capacity,
                                         std::int64_t capacity_budget = kDefaultCapacityBudget) {
  if (capacity + 1 > capacity_budget)
    throw CapacityTooLarge("bounded-knapsack table for capacity " + std::to_string(capacity) +
                           " exceeds the budget of " + std::to_string(capacity_budget) +
                           " entries");
  std::vector<std::int64_t> best(static_cast<std::size_t>(capacity) + 1, 0);
  for (const BoundedGroup& group : groups) {
    std::int64_t left = group.size;
    for (std::int64_t chunk = 1; left > 0; chunk <<= 1) {
      const std::int64_t take = std::min(chunk, left);
      left -= take;
      const std::int64_t w = take * group.lightest;
      const std::int64_t p = take * group.heaviest;
      if (w > capacity) continue;
      for (std::int64_t k = capacity; k >= w; --k) {
        const std::int64_t candidate = best[static_cast<std::size_t>(k - w)] + p;
        if (candidate > best[static_cast<std::size_t>(k)])
          best[static_cast<std::size_t>(k)] = candidate;
      }
    }
  }
  return best[static_cast<std::size_t>(capacity)];
}

struct CardinalityResult {
  std::int64_t min_count = 0;  // items of the last group every IMS must select
  std::int64_t inner_max = 0;  // the bounded-knapsack optimum over the heavier groups
  double t3_seconds = 0.0;
};

/// How many items of the last (lightest) group every inclusionwise
/// maximal solution must select, for a contiguous partition given by
/// boundaries m_0=0 < m_1 < ... < m_g=n over the weight-sorted items.
///
/// The heavier groups can occupy at most inner_max of the objective even
/// in the most favourable packing, so if an IMS selected fewer than
/// min_count light items, the leftover capacity could still hold the last
/// group's heaviest item, contradicting maximality.
inline CardinalityResult min_last_group_selection(
    const KnapsackInstance& inst, std::span<const std::size_t> boundaries,
    std::int64_t capacity_budget = kDefaultCapacityBudget) {
  const auto start_time = std::chrono::steady_clock::now();
  if (boundaries.size() < 3 || boundaries.front() != 0 || boundaries.back() != inst.size())
    throw InvalidGroupCount("partition must cover all items with at least 2 groups");
  const std::size_t g = boundaries.size() - 1;

  std::vector<BoundedGroup> groups(g - 1);
  for (std::size_t i = 0; i + 1 < g; ++i) {
    groups[i].heaviest = inst.weight(boundaries[i]);
    groups[i].lightest = inst.weight(boundaries[i + 1] - 1);
    groups[i].size = static_cast<std::int64_t>(boundaries[i + 1] - boundaries[i]);
  }

  CardinalityResult result;
  result.inner_max = bounded_knapsack_max(groups, inst.capacity(), capacity_budget);

  const std::size_t last_start = boundaries[g - 1];
  const std::int64_t last_size = static_cast<std::int64_t>(inst.size() - last_start);
  const std::int64_t threshold =
      inst.capacity() - result.inner_max - inst.weight(last_start);

  result.min_count = last_size;  // fallback when no prefix crosses the threshold
  std::int64_t prefix = 0;
  for (std::int64_t a = 0; a <= last_size; ++a) {
    if (a > 0) prefix += inst.weight(last_start + static_cast<std::size_t>(a) - 1);
    if (prefix > threshold) {
      result.min_count = a;
      break;
    }
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_time;
  result.t3_seconds = std::max(elapsed.count(), 1e-9);
  return result;
}

inline CardinalityResult min_last_group_selection(
    const KnapsackInstance& inst, const ClusteringResult& clustering,
    std::int64_t capacity_budget = kDefaultCapacityBudget) {
  return min_last_group_selection(inst, clustering.boundaries, capacity_budget);
}

}  // namespace knapfeat
