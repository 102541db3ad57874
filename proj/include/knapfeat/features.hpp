#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "knapfeat/cardinality.hpp"
#include "knapfeat/clustering.hpp"
#include "knapfeat/errors.hpp"
#include "knapfeat/ims_counting.hpp"
#include "knapfeat/instance.hpp"
#include "knapfeat/log_count.hpp"
#include "knapfeat/lower_bound.hpp"

namespace knapfeat {

inline constexpr std::size_t kFeatureCount = 14;

/// Canonical feature names, fixing the CSV column order.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "log2_ims_count",       // 1. number of IMSs, as its binary logarithm
    "min_ims_weight",       // 2. smallest IMS total weight
    "max_ims_weight",       // 3. largest IMS total weight
    "mean_ims_weight",      // 4. average IMS total weight
    "ims_weight_variance",  // 5. variance of the IMS total weights
    "counting_seconds",     // 6. wall time of the counting sweep
    "critical_index",       // 7. deepest suffix start that overfills the knapsack
    "split_rank",           // 8. efficiency-order rank where the bound splits an item
    "profit_lower_bound",   // 9. lower bound on any IMS's profit
    "cluster_count",        // 10. elbow-selected number of weight groups
    "last_group_size",      // 11. items in the lightest weight group
    "clustering_seconds",   // 12. wall time of the elbow selection
    "min_last_group_items", // 13. lightest-group items every IMS must select
    "cardinality_seconds",  // 14. wall time of the cardinality bound
};

/// The full feature set of one instance. The clustering-dependent entries
/// are absent when the instance has fewer than 3 items, because the elbow
/// range [2, n-1] is then empty.
struct FeatureVector {
  LogCount ims_count;
  std::int64_t min_ims_weight = 0;
  std::int64_t max_ims_weight = 0;
  double mean_ims_weight = 0.0;
  double ims_weight_variance = 0.0;
  double counting_seconds = 0.0;
  std::int64_t critical_index = 0;
  std::int64_t split_rank = 0;
  double profit_lower_bound = 0.0;
  std::optional<std::int64_t> cluster_count;
  std::optional<std::int64_t> last_group_size;
  std::optional<double> clustering_seconds;
  std::optional<std::int64_t> min_last_group_items;
  std::optional<double> cardinality_seconds;

  bool degenerate_elbow = false;          // no elbow in range; cluster_count fell back to n-1
  std::optional<double> solve_seconds;    // diagnostic only, not one of the features
};

struct ExtractConfig {
  double alpha = 0.9;
  std::int64_t capacity_budget = kDefaultCapacityBudget;
  KmeansAlgorithm kmeans_algorithm = KmeansAlgorithm::smawk;
  bool solver_diagnostic = false;  // also time solve_optimal, as an extra column
};

/// The 14 features as plain doubles in canonical order; the count feature
/// carries its log2 value. Absent entries stay empty.
inline std::array<std::optional<double>, kFeatureCount> feature_values(const FeatureVector& v) {
  std::array<std::optional<double>, kFeatureCount> out;
  out[0] = v.ims_count.log2();
  out[1] = static_cast<double>(v.min_ims_weight);
  out[2] = static_cast<double>(v.max_ims_weight);
  out[3] = v.mean_ims_weight;
  out[4] = v.ims_weight_variance;
  out[5] = v.counting_seconds;
  out[6] = static_cast<double>(v.critical_index);
  out[7] = static_cast<double>(v.split_rank);
  out[8] = v.profit_lower_bound;
  if (v.cluster_count) out[9] = static_cast<double>(*v.cluster_count);
  if (v.last_group_size) out[10] = static_cast<double>(*v.last_group_size);
  if (v.clustering_seconds) out[11] = *v.clustering_seconds;
  if (v.min_last_group_items) out[12] = static_cast<double>(*v.min_last_group_items);
  if (v.cardinality_seconds) out[13] = *v.cardinality_seconds;
  return out;
}

namespace detail {

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const CapacityTooLarge& e) {
    throw CapacityTooLarge(std::string(stage) + ": " + e.what());
  } catch (const Error& e) {
    throw Error(std::string(stage) + ": " + e.what());
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return std::max(d.count(), 1e-9);
}

}  // namespace detail

/// Computes all features of one instance. Deterministic except for the
/// wall-time entries. Errors carry the name of the failing stage.
inline FeatureVector extract(const KnapsackInstance& inst, const ExtractConfig& config = {}) {
  FeatureVector v;

  detail::run_stage("ims_counting", [&] {
    const auto start = std::chrono::steady_clock::now();
    const ImsWeightProfile profile = number_ims_weight(inst, config.capacity_budget);
    const double elapsed = detail::seconds_since(start);
    const CountingFeatures counting = counting_features(profile, elapsed);
    v.ims_count = counting.cardinality;
    v.min_ims_weight = counting.min_weight;
    v.max_ims_weight = counting.max_weight;
    v.mean_ims_weight = counting.mean_weight;
    v.ims_weight_variance = counting.variance;
    v.counting_seconds = counting.t1_seconds;
  });

  detail::run_stage("lower_bound", [&] {
    const LowerBoundResult lower = ims_profit_lower_bound(inst);
    v.critical_index = static_cast<std::int64_t>(lower.critical);
    v.split_rank = static_cast<std::int64_t>(lower.split_rank);
    v.profit_lower_bound = lower.bound.value();
  });

  if (inst.size() >= 3) {
    const ClusteringResult clustering = detail::run_stage("weight_clustering", [&] {
      return select_g_star(inst.sorted_weights(), config.alpha, config.kmeans_algorithm);
    });
    v.cluster_count = static_cast<std::int64_t>(clustering.g_star);
    v.last_group_size = static_cast<std::int64_t>(clustering.s_last);
    v.clustering_seconds = clustering.t2_seconds;
    v.degenerate_elbow = clustering.degenerate_elbow;

    detail::run_stage("cardinality_bound", [&] {
      const CardinalityResult cardinality =
          min_last_group_selection(inst, clustering, config.capacity_budget);
      v.min_last_group_items = cardinality.min_count;
      v.cardinality_seconds = cardinality.t3_seconds;
    });
  }

  if (config.solver_diagnostic) {
    detail::run_stage("solve_optimal", [&] {
      const auto start = std::chrono::steady_clock::now();
      solve_optimal(inst, config.capacity_budget);
      v.solve_seconds = detail::seconds_since(start);
    });
  }
  return v;
}

}  // namespace knapfeat
