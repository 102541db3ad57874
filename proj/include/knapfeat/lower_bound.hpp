#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "knapfeat/errors.hpp"
#include "knapfeat/ims_counting.hpp"
#include "knapfeat/instance.hpp"

namespace knapfeat {

/// A bound of the form whole + frac_num * split_profit / split_weight,
/// kept in integer parts so comparisons against integer profits stay
/// exact. A bound without a fractional part has split_weight == 1 and
/// frac_num == 0.
struct FractionalBound {
  std::int64_t whole = 0;
  std::int64_t frac_num = 0;
  std::int64_t split_profit = 0;
  std::int64_t split_weight = 1;

  double value() const {
    return static_cast<double>(whole) +
           static_cast<double>(frac_num) * static_cast<double>(split_profit) /
               static_cast<double>(split_weight);
  }

  /// bound <= profit, decided in exact integer arithmetic.
  bool at_most(std::int64_t profit) const {
    return static_cast<__int128>(whole - profit) * split_weight +
               static_cast<__int128>(frac_num) * split_profit <=
           0;
  }

  /// bound >= profit, decided in exact integer arithmetic.
  bool at_least(std::int64_t profit) const {
    return static_cast<__int128>(whole - profit) * split_weight +
               static_cast<__int128>(frac_num) * split_profit >=
           0;
  }
};

/// The largest start index e (1-based) whose trailing weight sum
/// w_e + ... + w_n still exceeds the capacity. Exists because not all
/// items fit together. One backward pass, O(n).
inline std::size_t critical_index(const KnapsackInstance& inst) {
  std::int64_t suffix = 0;
  for (std::size_t i = inst.size(); i-- > 0;) {
    suffix += inst.weight(i);
    if (suffix > inst.capacity()) return i + 1;
  }
  throw InvariantViolation("sum of weights <= capacity (all items fit together)");
}

/// Item indices (0-based) ordered by non-decreasing profit/weight ratio.
/// Ratios are compared by exact cross-multiplication; ties break by
/// ascending item index.
inline std::vector<std::size_t> efficiency_order(const KnapsackInstance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&inst](std::size_t a, std::size_t b) {
    const __int128 lhs = static_cast<__int128>(inst.profit(a)) * inst.weight(b);
    const __int128 rhs = static_cast<__int128>(inst.profit(b)) * inst.weight(a);
    if (lhs != rhs) return lhs < rhs;
    return a < b;
  });
  return order;
}

struct LowerBoundResult {
  std::size_t critical = 0;           // 1-based; feature "critical_index"
  std::size_t split_rank = 0;         // 1-based rank in the efficiency order
  std::vector<std::size_t> order;     // efficiency order, 0-based indices
  FractionalBound bound;              // lower bound on any IMS's profit
};

/// Lower bound on the profit of every inclusionwise maximal solution.
///
/// Any IMS must leave some item in {critical..n} out, so its total weight
/// is at least c - w_critical + 1. The cheapest way to reach that weight
/// is to fill the least efficient items first, fractionally at the end;
/// that relaxation's profit bounds every IMS from below. O(n log n).
inline LowerBoundResult ims_profit_lower_bound(const KnapsackInstance& inst) {
  LowerBoundResult result;
  result.critical = critical_index(inst);
  result.order = efficiency_order(inst);

  const std::int64_t target = inst.capacity() - inst.weight(result.critical - 1) + 1;
  std::int64_t prefix_weight = 0;
  std::int64_t prefix_profit = 0;
  for (std::size_t rank = 0; rank < result.order.size(); ++rank) {
    const std::size_t item = result.order[rank];
    if (prefix_weight + inst.weight(item) >= target) {
      result.split_rank = rank + 1;
      result.bound.whole = prefix_profit;
      result.bound.frac_num = target - prefix_weight;
      result.bound.split_profit = inst.profit(item);
      result.bound.split_weight = inst.weight(item);
      return result;
    }
    prefix_weight += inst.weight(item);
    prefix_profit += inst.profit(item);
  }
  // Unreachable: total weight >= c+1 >= target.
  throw InvariantViolation("efficiency prefix never reaches the weight target");
}

/// Linear-relaxation (fractional greedy) upper bound on the optimal
/// profit: fill in non-increasing efficiency order, split the first item
/// that no longer fits.
inline FractionalBound dantzig_upper_bound(const KnapsackInstance& inst) {
  std::vector<std::size_t> order = efficiency_order(inst);
  FractionalBound bound;
  std::int64_t remaining = inst.capacity();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t item = *it;
    if (inst.weight(item) <= remaining) {
      bound.whole += inst.profit(item);
      remaining -= inst.weight(item);
      if (remaining == 0) break;
    } else {
      bound.frac_num = remaining;
      bound.split_profit = inst.profit(item);
      bound.split_weight = inst.weight(item);
      break;
    }
  }
  return bound;
}

/// Lower bound on (IMS profit) / (optimal profit) given an upper bound on
/// the optimal profit.
inline double profit_ratio_bound(const KnapsackInstance& inst, double upper_bound) {
  if (upper_bound <= 0.0) throw InvalidUpperBound("upper bound must be positive");
  return ims_profit_lower_bound(inst).bound.value() / upper_bound;
}

struct OptimalSolution {
  std::int64_t profit = 0;
  std::vector<bool> selection;  // indexed like the sorted items
};

/// Exact optimum by the standard profit-maximizing sweep over capacities.
/// The reconstructed selection is always inclusionwise maximal because
/// profits are strictly positive. O(n*c) time, O(n*c) bits of space.
inline OptimalSolution solve_optimal(const KnapsackInstance& inst,
                                     std::int64_t capacity_budget = kDefaultCapacityBudget) {
  const std::int64_t c = inst.capacity();
  const std::size_t n = inst.size();
  if (c + 1 > capacity_budget ||
      static_cast<__int128>(n) * (c + 1) > static_cast<__int128>(capacity_budget) * 64)
    throw CapacityTooLarge("optimal-solution table exceeds the budget of " +
                           std::to_string(capacity_budget) + " entries");

  const std::size_t width = static_cast<std::size_t>(c) + 1;
  std::vector<std::int64_t> best(width, 0);
  std::vector<std::vector<bool>> keep(n, std::vector<bool>(width, false));
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = inst.weight(i);
    const std::int64_t p = inst.profit(i);
    for (std::int64_t k = c; k >= w; --k) {
      const std::int64_t candidate = best[static_cast<std::size_t>(k - w)] + p;
      if (candidate > best[static_cast<std::size_t>(k)]) {
        best[static_cast<std::size_t>(k)] = candidate;
        keep[i][static_cast<std::size_t>(k)] = true;
      }
    }
  }

  OptimalSolution solution;
  solution.profit = best[width - 1];
  solution.selection.assign(n, false);
  std::int64_t k = c;
  for (std::size_t i = n; i-- > 0;) {
    if (keep[i][static_cast<std::size_t>(k)]) {
      solution.selection[i] = true;
      k -= inst.weight(i);
    }
  }
  return solution;
}

}  // namespace knapfeat
