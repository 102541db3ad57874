#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "knapfeat/errors.hpp"
#include "knapfeat/features.hpp"

namespace knapfeat {

enum class NormRule {
  binary_log,  // value becomes log2(value); the count feature is already a log
  min_max,     // (value - min) / (max - min) over the fitted corpus
};

/// Which features are log-scaled rather than min-max scaled: the count
/// (whose stored value is already a log) and the three timings.
inline constexpr bool kLogScaledFeature[kFeatureCount] = {
    true,  false, false, false, false, true,  false,
    false, false, false, false, true,  false, true,
};

/// Per-feature normalization parameters fitted on a corpus.
///
/// Log-scaled features carry their log2 values unchanged by min/max; all
/// other features are min-max scaled into [0,1] on the fitting corpus
/// (values from outside the corpus may leave [0,1] and are not clamped).
/// A feature that is constant over the corpus normalizes to 0 and is
/// flagged degenerate.
class NormalizationParams {
public:
  struct Entry {
    NormRule rule = NormRule::min_max;
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;
  };

  static NormalizationParams fit(
      std::span<const std::array<std::optional<double>, kFeatureCount>> corpus) {
    NormalizationParams params;
    for (std::size_t idx = 0; idx < kFeatureCount; ++idx) {
      Entry& entry = params.entries_[idx];
      if (kLogScaledFeature[idx]) {
        entry.rule = NormRule::binary_log;
        continue;
      }
      entry.rule = NormRule::min_max;
      bool seen = false;
      for (const auto& values : corpus) {
        const std::optional<double> raw = values[idx];
        if (!raw) continue;  // absent entries are excluded from fitting
        if (!seen) {
          entry.min = entry.max = *raw;
          seen = true;
        } else {
          entry.min = std::min(entry.min, *raw);
          entry.max = std::max(entry.max, *raw);
        }
      }
      entry.degenerate = !seen || entry.min == entry.max;
    }
    return params;
  }

  static NormalizationParams fit(std::span<const FeatureVector> corpus) {
    std::vector<std::array<std::optional<double>, kFeatureCount>> values;
    values.reserve(corpus.size());
    for (const FeatureVector& v : corpus) values.push_back(feature_values(v));
    return fit(std::span<const std::array<std::optional<double>, kFeatureCount>>(values));
  }

  const Entry& entry(std::size_t idx) const { return entries_[idx]; }

  /// Normalizes one raw value of feature idx. For the count feature the
  /// raw value is its stored log2 and passes through unchanged.
  double apply_one(std::size_t idx, double raw) const {
    const Entry& e = entries_[idx];
    if (e.rule == NormRule::binary_log) return idx == 0 ? raw : std::log2(raw);
    if (e.degenerate) return 0.0;
    return (raw - e.min) / (e.max - e.min);
  }

  /// Inverse of apply_one for min-max features (used to validate fits).
  double restore_one(std::size_t idx, double normalized) const {
    const Entry& e = entries_[idx];
    if (e.rule == NormRule::binary_log) return idx == 0 ? normalized : std::exp2(normalized);
    if (e.degenerate) return e.min;
    return normalized * (e.max - e.min) + e.min;
  }

  std::array<std::optional<double>, kFeatureCount> apply(const FeatureVector& v) const {
    std::array<std::optional<double>, kFeatureCount> out = feature_values(v);
    for (std::size_t idx = 0; idx < kFeatureCount; ++idx)
      if (out[idx]) out[idx] = apply_one(idx, *out[idx]);
    return out;
  }

  /// One line per feature: "<name> <rule> <min> <max> <degenerate>".
  /// min/max use shortest round-trip decimals so reloads are bit-exact.
  void save(std::ostream& os) const {
    const auto fmt = [](double v) {
      char buffer[64];
      const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
      return std::string(buffer, end);
    };
    for (std::size_t idx = 0; idx < kFeatureCount; ++idx) {
      const Entry& e = entries_[idx];
      os << kFeatureNames[idx] << ' '
         << (e.rule == NormRule::binary_log ? "log" : "minmax") << ' ' << fmt(e.min) << ' '
         << fmt(e.max) << ' ' << (e.degenerate ? 1 : 0) << '\n';
    }
  }

  static NormalizationParams load(std::istream& is) {
    NormalizationParams params;
    std::string line;
    std::size_t idx = 0;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (idx >= kFeatureCount) throw MalformedInput("too many normalization entries");
      std::istringstream fields(line);
      std::string name, rule;
      Entry& e = params.entries_[idx];
      int degenerate = 0;
      if (!(fields >> name >> rule >> e.min >> e.max >> degenerate) ||
          name != kFeatureNames[idx] || (rule != "log" && rule != "minmax"))
        throw MalformedInput("bad normalization entry: " + line);
      e.rule = rule == "log" ? NormRule::binary_log : NormRule::min_max;
      e.degenerate = degenerate != 0;
      ++idx;
    }
    if (idx != kFeatureCount) throw MalformedInput("missing normalization entries");
    return params;
  }

private:
  std::array<Entry, kFeatureCount> entries_;
};

}  // namespace knapfeat
