#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "knapfeat/errors.hpp"

namespace knapfeat {

enum class KmeansAlgorithm {
  quadratic,  // plain O(n^2 g) dynamic program
  smawk,      // O(n g) row minima via SMAWK; same output as quadratic
};

/// An optimal partition of a weight sequence into g contiguous groups.
struct KmeansPartition {
  double cost = 0.0;                    // sum of squared distances to group means
  std::vector<std::size_t> boundaries;  // m_0=0 < m_1 < ... < m_g=n (group end indices)
  std::vector<double> centroids;        // mean weight per group
};

namespace detail {

/// Leftmost row minima of an implicitly defined totally monotone matrix.
/// rows/cols are index sets in ascending order; lookup(r, c) yields the
/// matrix entry. Results land in result[r].
template <typename Lookup>
void smawk_rec(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
               const Lookup& lookup, std::vector<std::size_t>& result) {
  if (rows.empty()) return;

  // Reduce: keep at most |rows| columns that can still host a minimum.
  std::vector<std::size_t> kept;
  kept.reserve(std::min(rows.size(), cols.size()));
  for (std::size_t col : cols) {
    while (!kept.empty() &&
           lookup(rows[kept.size() - 1], col) < lookup(rows[kept.size() - 1], kept.back()))
      kept.pop_back();
    if (kept.size() < rows.size()) kept.push_back(col);
  }

  // Solve the odd rows recursively.
  std::vector<std::size_t> odd;
  odd.reserve(rows.size() / 2);
  for (std::size_t i = 1; i < rows.size(); i += 2) odd.push_back(rows[i]);
  smawk_rec(odd, kept, lookup, result);

  // Interpolate the even rows between the odd answers.
  std::size_t start = 0;
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    const std::size_t row = rows[i];
    std::size_t stop = kept.size() - 1;
    if (i + 1 < rows.size()) {
      const std::size_t bound = result[rows[i + 1]];
      stop = static_cast<std::size_t>(
          std::lower_bound(kept.begin(), kept.end(), bound) - kept.begin());
    }
    std::size_t best_col = kept[start];
    double best = lookup(row, best_col);
    for (std::size_t j = start + 1; j <= stop; ++j) {
      const double v = lookup(row, kept[j]);
      if (v < best) {
        best = v;
        best_col = kept[j];
      }
    }
    result[row] = best_col;
    start = stop;
  }
}

template <typename Lookup>
std::vector<std::size_t> smawk(std::size_t size, const Lookup& lookup) {
  std::vector<std::size_t> rows(size);
  std::vector<std::size_t> cols(size);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  std::vector<std::size_t> result(size, 0);
  smawk_rec(rows, cols, lookup, result);
  return result;
}

/// Dynamic program for globally optimal 1D k-means on a non-increasing
/// weight sequence. Row g is built from row g-1, so evaluating the cost
/// for g = 2, 3, ... in turn costs one row each; rows are retained for
/// backtracking. Every group is nonempty; cost ties prefer the smaller
/// start index of the last group.
class KmeansDp {
public:
  KmeansDp(std::span<const std::int64_t> weights, KmeansAlgorithm algorithm)
      : algorithm_(algorithm), n_(weights.size()) {
    if (n_ == 0) throw InvalidGroupCount("cannot cluster an empty weight sequence");
    for (std::size_t i = 1; i < n_; ++i)
      if (weights[i - 1] < weights[i])
        throw InvariantViolation("weights must be sorted in non-increasing order");
    prefix_.resize(n_ + 1, 0);
    prefix_sq_.resize(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      prefix_[i + 1] = prefix_[i] + weights[i];
      prefix_sq_[i + 1] = prefix_sq_[i] + static_cast<__int128>(weights[i]) * weights[i];
    }
  }

  std::size_t size() const { return n_; }

  /// Optimal cost of exactly g nonempty contiguous groups.
  double cost(std::size_t g) {
    ensure_rows(g);
    return rows_d_[g - 1][n_ - 1];
  }

  KmeansPartition partition(std::size_t g) {
    ensure_rows(g);
    KmeansPartition part;
    part.cost = rows_d_[g - 1][n_ - 1];
    part.boundaries.assign(g + 1, 0);
    part.boundaries[g] = n_;
    std::size_t end = n_ - 1;  // inclusive end of the group being placed
    for (std::size_t r = g; r >= 2; --r) {
      const std::size_t start = rows_t_[r - 1][end];
      part.boundaries[r - 1] = start;
      end = start - 1;
    }
    part.centroids.resize(g);
    for (std::size_t r = 0; r < g; ++r) {
      const std::size_t lo = part.boundaries[r];
      const std::size_t hi = part.boundaries[r + 1];
      part.centroids[r] = static_cast<double>(prefix_[hi] - prefix_[lo]) /
                          static_cast<double>(hi - lo);
    }
    return part;
  }

private:
  /// Cost of grouping items i..j (inclusive) together: sum of squared
  /// deviations from the group mean, from exact integer prefix sums.
  double segment_cost(std::size_t i, std::size_t j) const {
    const double len = static_cast<double>(j - i + 1);
    const double s = static_cast<double>(prefix_[j + 1] - prefix_[i]);
    const double sq = static_cast<double>(prefix_sq_[j + 1] - prefix_sq_[i]);
    const double mean = s / len;
    return std::max(0.0, sq - mean * s);
  }

  void ensure_rows(std::size_t g) {
    if (g < 1 || g > n_)
      throw InvalidGroupCount("group count " + std::to_string(g) +
                              " is outside [1, " + std::to_string(n_) + "]");
    while (rows_d_.size() < g) append_row();
  }

  void append_row() {
    const std::size_t g = rows_d_.size() + 1;
    std::vector<double> d(n_, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::size_t> t(n_, 0);
    if (g == 1) {
      for (std::size_t j = 0; j < n_; ++j) d[j] = segment_cost(0, j);
    } else if (algorithm_ == KmeansAlgorithm::quadratic) {
      const std::vector<double>& prev = rows_d_[g - 2];
      for (std::size_t j = g - 1; j < n_; ++j) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_m = g - 1;
        for (std::size_t m = g - 1; m <= j; ++m) {
          const double v = prev[m - 1] + segment_cost(m, j);
          if (v < best) {
            best = v;
            best_m = m;
          }
        }
        d[j] = best;
        t[j] = best_m;
      }
    } else {
      // Row minima of A(j, m) = prev[m-1] + segment_cost(m, j) over the
      // valid triangle m <= j; entries right of the diagonal replicate
      // the diagonal, which keeps the matrix totally monotone and can
      // never win a leftmost minimum.
      const std::vector<double>& prev = rows_d_[g - 2];
      const std::size_t count = n_ - (g - 1);
      const auto lookup = [&](std::size_t jr, std::size_t mc) -> double {
        const std::size_t j = jr + (g - 1);
        const std::size_t m = std::min(mc + (g - 1), j);
        return prev[m - 1] + segment_cost(m, j);
      };
      const std::vector<std::size_t> argmin = smawk(count, lookup);
      for (std::size_t jr = 0; jr < count; ++jr) {
        const std::size_t j = jr + (g - 1);
        d[j] = lookup(jr, argmin[jr]);
        t[j] = std::min(argmin[jr] + (g - 1), j);
      }
    }
    rows_d_.push_back(std::move(d));
    rows_t_.push_back(std::move(t));
  }

  KmeansAlgorithm algorithm_;
  std::size_t n_;
  std::vector<__int128> prefix_;
  std::vector<__int128> prefix_sq_;
  std::vector<std::vector<double>> rows_d_;       // rows_d_[g-1][j]
  std::vector<std::vector<std::size_t>> rows_t_;  // start of the last group
};

}  // namespace detail

/// Globally optimal 1D k-means of a non-increasing weight sequence into
/// exactly g contiguous groups.
inline KmeansPartition kmeans_1d(std::span<const std::int64_t> weights, std::size_t g,
                                 KmeansAlgorithm algorithm = KmeansAlgorithm::smawk) {
  detail::KmeansDp dp(weights, algorithm);
  if (g < 1 || g > dp.size())
    throw InvalidGroupCount("group count " + std::to_string(g) + " is outside [1, " +
                            std::to_string(dp.size()) + "]");
  return dp.partition(g);
}

/// h(g) for g = 1..g_max: the optimal clustering cost as the number of
/// groups grows. One DP row per value of g.
inline std::vector<double> h_curve(std::span<const std::int64_t> weights, std::size_t g_max,
                                   KmeansAlgorithm algorithm = KmeansAlgorithm::smawk) {
  detail::KmeansDp dp(weights, algorithm);
  if (g_max < 1 || g_max > dp.size())
    throw InvalidGroupCount("g_max " + std::to_string(g_max) + " is outside [1, " +
                            std::to_string(dp.size()) + "]");
  std::vector<double> curve(g_max);
  for (std::size_t g = 1; g <= g_max; ++g) curve[g - 1] = dp.cost(g);
  return curve;
}

/// The clustering chosen by the elbow rule, with its h(g) trail.
struct ClusteringResult {
  std::size_t g_star = 0;
  std::vector<double> h_curve;          // h(2) .. h(g_star + 1)
  std::vector<double> centroids;
  std::vector<std::size_t> boundaries;  // m_0=0 < ... < m_{g_star}=n
  std::size_t s_last = 0;               // size of the last (lightest) group
  bool degenerate_elbow = false;        // no g in range passed the ratio test
  double t2_seconds = 0.0;
};

/// Picks the number of groups at the elbow of h(g): the smallest
/// g in [2, n-1] with h(g+1)/h(g) > alpha. A perfect fit (h(g) = 0) stops
/// the search at that g, since further splitting cannot improve it. If no
/// g qualifies, the result is g = n-1 with the degenerate flag set.
inline ClusteringResult select_g_star(std::span<const std::int64_t> weights, double alpha = 0.9,
                                      KmeansAlgorithm algorithm = KmeansAlgorithm::smawk) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvariantViolation("alpha must lie strictly between 0 and 1");
  if (weights.size() < 3)
    throw InvalidGroupCount("elbow selection needs at least 3 weights");
  const auto start_time = std::chrono::steady_clock::now();

  detail::KmeansDp dp(weights, algorithm);
  const std::size_t n = dp.size();

  ClusteringResult result;
  result.g_star = n - 1;
  result.degenerate_elbow = true;
  for (std::size_t g = 2; g + 1 <= n; ++g) {
    const double h_g = dp.cost(g);
    if (h_g == 0.0) {
      result.g_star = g;
      result.degenerate_elbow = false;
      break;
    }
    if (dp.cost(g + 1) / h_g > alpha) {
      result.g_star = g;
      result.degenerate_elbow = false;
      break;
    }
  }

  result.h_curve.reserve(result.g_star);
  for (std::size_t g = 2; g <= result.g_star + 1; ++g)
    result.h_curve.push_back(dp.cost(g));

  KmeansPartition part = dp.partition(result.g_star);
  result.centroids = std::move(part.centroids);
  result.boundaries = std::move(part.boundaries);
  result.s_last = result.boundaries[result.g_star] - result.boundaries[result.g_star - 1];

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_time;
  result.t2_seconds = std::max(elapsed.count(), 1e-9);
  return result;
}

}  // namespace knapfeat
