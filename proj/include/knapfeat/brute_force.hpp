#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "knapfeat/cardinality.hpp"
#include "knapfeat/clustering.hpp"
#include "knapfeat/errors.hpp"
#include "knapfeat/ims_counting.hpp"
#include "knapfeat/instance.hpp"
#include "knapfeat/lower_bound.hpp"
#include "knapfeat/random.hpp"

namespace knapfeat {

/// One inclusionwise maximal solution found by enumeration. Bit i of
/// mask selects sorted item i.
struct ImsSolution {
  std::uint32_t mask = 0;
  std::int64_t weight = 0;
  std::int64_t profit = 0;
};

struct ImsEnumeration {
  std::vector<ImsSolution> solutions;

  /// Exact per-weight counts, indexed 0..capacity.
  std::vector<std::uint64_t> weight_counts(std::int64_t capacity) const {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(capacity) + 1, 0);
    for (const ImsSolution& s : solutions) ++counts[static_cast<std::size_t>(s.weight)];
    return counts;
  }

  std::int64_t min_profit() const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const ImsSolution& s : solutions) best = std::min(best, s.profit);
    return best;
  }

  std::int64_t max_profit() const {
    std::int64_t best = 0;
    for (const ImsSolution& s : solutions) best = std::max(best, s.profit);
    return best;
  }
};

/// The 0-based index of the least heavy unselected item; with weights
/// sorted non-increasing that is the highest unselected index. Every
/// feasible mask has one because all items never fit together.
inline std::size_t least_heavy_excluded(std::uint32_t mask, std::size_t n) {
  for (std::size_t i = n; i-- > 0;)
    if (!(mask >> i & 1u)) return i;
  throw InvariantViolation("full selection cannot be feasible");
}

/// All inclusionwise maximal solutions by checking every one of the 2^n
/// selections. Reference implementation for cross-checks; n is capped.
inline ImsEnumeration enumerate_ims(const KnapsackInstance& inst) {
  const std::size_t n = inst.size();
  if (n > 25) throw TooManyItems("enumeration over 2^n is capped at n = 25");
  ImsEnumeration result;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t weight = 0;
    std::int64_t profit = 0;
    std::int64_t lightest_out = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        weight += inst.weight(i);
        profit += inst.profit(i);
      } else {
        lightest_out = inst.weight(i);  // later items are lighter
      }
    }
    if (weight > inst.capacity()) continue;
    if (lightest_out >= 0 && weight + lightest_out <= inst.capacity()) continue;
    result.solutions.push_back({mask, weight, profit});
  }
  return result;
}

/// Minimal cost over every contiguous partition of the weights into g
/// groups, each group scored as the sum of squared deviations from its
/// own average. Independent of the dynamic program: plain enumeration of
/// split points and direct per-group arithmetic.
inline double brute_h(std::span<const std::int64_t> weights, std::size_t g) {
  const std::size_t n = weights.size();
  if (n > 12) throw TooManyItems("partition enumeration is capped at n = 12");
  if (g < 1 || g > n)
    throw InvalidGroupCount("group count " + std::to_string(g) + " is outside [1, " +
                            std::to_string(n) + "]");

  const auto group_cost = [&weights](std::size_t lo, std::size_t hi) {  // [lo, hi)
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += static_cast<double>(weights[i]);
    mean /= static_cast<double>(hi - lo);
    double cost = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = static_cast<double>(weights[i]) - mean;
      cost += d * d;
    }
    return cost;
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> splits(g + 1, 0);
  splits[g] = n;
  const auto recurse = [&](auto&& self, std::size_t group, std::size_t from) -> void {
    if (group == g) {
      double cost = 0.0;
      for (std::size_t r = 0; r < g; ++r) cost += group_cost(splits[r], splits[r + 1]);
      best = std::min(best, cost);
      return;
    }
    // Leave enough items for the remaining groups.
    for (std::size_t next = from + 1; next + (g - group - 1) <= n; ++next) {
      splits[group] = from;
      splits[group + 1] = group + 1 == g ? n : next;
      if (group + 1 == g) {
        self(self, group + 1, n);
        break;
      }
      self(self, group + 1, next);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

/// A random contiguous partition of n items into g groups (2 <= g < n),
/// as boundaries m_0=0 < ... < m_g=n.
inline std::vector<std::size_t> random_contiguous_partition(std::mt19937_64& rng, std::size_t n) {
  const std::size_t g = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(n) - 1));
  std::vector<std::size_t> cuts;
  cuts.reserve(g + 1);
  cuts.push_back(0);
  // g-1 distinct interior cut points out of 1..n-1.
  std::vector<std::size_t> interior(n - 1);
  std::iota(interior.begin(), interior.end(), std::size_t{1});
  for (std::size_t k = 0; k + 1 < g; ++k) {
    const std::size_t pick = static_cast<std::size_t>(
        uniform_int(rng, static_cast<std::int64_t>(k), static_cast<std::int64_t>(interior.size()) - 1));
    std::swap(interior[k], interior[pick]);
  }
  interior.resize(g - 1);
  std::sort(interior.begin(), interior.end());
  cuts.insert(cuts.end(), interior.begin(), interior.end());
  cuts.push_back(n);
  return cuts;
}

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::string instance_id;
  std::uint64_t partition_seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t round_count(const LogCount& count) {
  return count.is_zero() ? 0 : static_cast<std::uint64_t>(std::llround(std::exp2(count.log2())));
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Selected-item count in the last group of a partition.
inline std::int64_t last_group_selected(std::uint32_t mask, std::span<const std::size_t> bounds) {
  const std::size_t lo = bounds[bounds.size() - 2];
  const std::size_t hi = bounds.back();
  std::int64_t count = 0;
  for (std::size_t i = lo; i < hi; ++i) count += mask >> i & 1u;
  return count;
}

}  // namespace detail

/// Cross-checks every fast algorithm against plain enumeration on one
/// small instance. Failures become report entries, never exceptions.
inline VerifyReport verify_instance(const KnapsackInstance& inst, std::uint64_t partition_seed,
                                    double alpha = 0.9, std::string instance_id = {},
                                    std::int64_t capacity_budget = kDefaultCapacityBudget) {
  const std::size_t n = inst.size();
  if (n > 15) throw TooManyItems("verification enumerates 2^n and is capped at n = 15");

  VerifyReport report;
  report.instance_id = std::move(instance_id);
  report.partition_seed = partition_seed;
  const auto add = [&report](std::string name, bool pass, std::string detail = {}) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  const ImsEnumeration enumerated = enumerate_ims(inst);
  const ImsWeightProfile profile = number_ims_weight(inst, capacity_budget);

  // Per-weight counts must match enumeration exactly.
  {
    const std::vector<std::uint64_t> expected = enumerated.weight_counts(inst.capacity());
    bool pass = true;
    std::string detail;
    for (std::int64_t k = 1; k <= inst.capacity() && pass; ++k) {
      const std::uint64_t fast = detail::round_count(profile.counts[static_cast<std::size_t>(k)]);
      if (fast != expected[static_cast<std::size_t>(k)]) {
        pass = false;
        detail = "weight " + std::to_string(k) + ": " + std::to_string(fast) + " vs " +
                 std::to_string(expected[static_cast<std::size_t>(k)]);
      }
    }
    add("counting_profile", pass, detail);
  }

  // Summary statistics against their definitions.
  {
    const CountingFeatures features = counting_features(profile, 1e-9);
    const std::size_t total = enumerated.solutions.size();
    std::int64_t min_w = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_w = 0;
    double mean = 0.0;
    for (const ImsSolution& s : enumerated.solutions) {
      min_w = std::min(min_w, s.weight);
      max_w = std::max(max_w, s.weight);
      mean += static_cast<double>(s.weight);
    }
    mean /= static_cast<double>(total);
    double variance = 0.0;
    for (const ImsSolution& s : enumerated.solutions) {
      const double d = static_cast<double>(s.weight) - mean;
      variance += d * d;
    }
    variance /= static_cast<double>(total);

    const bool pass = detail::round_count(features.cardinality) == total &&
                      features.min_weight == min_w && features.max_weight == max_w &&
                      detail::close_rel(features.mean_weight, mean, 1e-9) &&
                      detail::close_rel(features.variance, variance, 1e-9);
    add("counting_features", pass);
  }

  // Each IMS leaves its least heavy excluded item i just out of reach:
  // total weight must lie in [c+1-w_i, c].
  {
    bool pass = true;
    std::vector<std::uint64_t> class_sizes(n, 0);
    for (const ImsSolution& s : enumerated.solutions) {
      const std::size_t i = least_heavy_excluded(s.mask, n);
      ++class_sizes[i];
      if (s.weight < inst.capacity() + 1 - inst.weight(i) || s.weight > inst.capacity()) {
        pass = false;
        break;
      }
    }
    add("excluded_weight_window", pass);

    std::uint64_t class_total = 0;
    for (std::uint64_t size : class_sizes) class_total += size;
    add("exclusion_partition", class_total == enumerated.solutions.size());
  }

  // The profit lower bound must hold for every IMS, and the optimum must
  // sit between the lower bound and the fractional upper bound.
  const LowerBoundResult lower = ims_profit_lower_bound(inst);
  {
    bool pass = true;
    for (const ImsSolution& s : enumerated.solutions)
      if (!lower.bound.at_most(s.profit)) {
        pass = false;
        break;
      }
    add("profit_lower_bound", pass);
  }
  {
    const FractionalBound upper = dantzig_upper_bound(inst);
    const OptimalSolution optimal = solve_optimal(inst, capacity_budget);
    const bool sandwich =
        lower.bound.at_most(optimal.profit) && upper.at_least(optimal.profit);
    const bool matches_enum = optimal.profit == enumerated.max_profit();
    add("bound_sandwich", sandwich && matches_enum,
        sandwich ? "" : "optimum escapes [lb, ub]");
  }

  // Minimum selection from the lightest group, on the fitted clustering
  // and on random contiguous partitions.
  const std::vector<std::int64_t> weights = inst.sorted_weights();
  {
    const ClusteringResult clustering = select_g_star(weights, alpha);
    const CardinalityResult cardinality =
        min_last_group_selection(inst, clustering, capacity_budget);
    bool pass = true;
    for (const ImsSolution& s : enumerated.solutions)
      if (detail::last_group_selected(s.mask, clustering.boundaries) < cardinality.min_count) {
        pass = false;
        break;
      }
    add("last_group_cardinality", pass);
  }
  {
    std::mt19937_64 rng(partition_seed);
    bool pass = true;
    for (int round = 0; round < 10 && pass; ++round) {
      const std::vector<std::size_t> bounds = random_contiguous_partition(rng, n);
      const CardinalityResult cardinality =
          min_last_group_selection(inst, bounds, capacity_budget);
      for (const ImsSolution& s : enumerated.solutions)
        if (detail::last_group_selected(s.mask, bounds) < cardinality.min_count) {
          pass = false;
          break;
        }
    }
    // The seed lands in the detail so any failure can be replayed.
    add("last_group_cardinality_random", pass, "seed=" + std::to_string(partition_seed));
  }

  // Clustering cost against exhaustive partition search.
  if (n <= 12) {
    bool pass = true;
    std::string detail;
    for (std::size_t g = 1; g <= std::min<std::size_t>(4, n) && pass; ++g) {
      const double fast = kmeans_1d(weights, g).cost;
      const double slow = brute_h(weights, g);
      if (!detail::close_rel(fast, slow, 1e-9)) {
        pass = false;
        detail = "g=" + std::to_string(g);
      }
    }
    add("kmeans_cost", pass, detail);
  }

  return report;
}

}  // namespace knapfeat
