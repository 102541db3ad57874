#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "knapfeat/errors.hpp"
#include "knapfeat/random.hpp"

namespace knapfeat {

/// One item of a 0-1 knapsack instance.
struct Item {
  std::int64_t profit = 0;
  std::int64_t weight = 0;
  friend bool operator==(const Item&, const Item&) = default;
};

/// Text layouts understood by KnapsackInstance::parse.
///
/// canonical:  line 1 = n, line 2 = c, then n lines "p w".
/// literature: line 1 = n, then n lines "i p w" (i = 1-based row number),
///             final line = c. Matches published instance archives.
enum class InstanceFormat { canonical, literature };

/// Largest accepted capacity. Keeps capacity-indexed tables and weight
/// sums inside comfortable 64-bit arithmetic.
inline constexpr std::int64_t kMaxCapacity = std::int64_t{1} << 31;

/// An immutable, validated 0-1 knapsack instance.
///
/// Items are stored with weights in non-increasing order (stable with
/// respect to the input order on ties). Construction rejects anything
/// that breaks the structural requirements: strictly positive integer
/// profits and weights, every item fits on its own (w_i <= c), and not
/// all items fit together (sum of weights > c).
class KnapsackInstance {
public:
  static KnapsackInstance create(std::int64_t capacity, std::vector<Item> items) {
    if (items.empty()) throw InvariantViolation("instance has no items");
    if (capacity < 1) throw InvariantViolation("capacity is not positive");
    if (capacity > kMaxCapacity)
      throw InvariantViolation("capacity exceeds the supported maximum of 2^31");

    for (const Item& item : items) {
      if (item.profit < 1) throw InvariantViolation("profit is not strictly positive");
      if (item.weight < 1) throw InvariantViolation("weight is not strictly positive");
      if (item.weight > capacity) throw InvariantViolation("item weight exceeds capacity");
    }

    __int128 weight_sum = 0;
    __int128 profit_sum = 0;
    for (const Item& item : items) {
      weight_sum += item.weight;
      profit_sum += item.profit;
    }
    constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();
    if (weight_sum > kInt64Max) throw InvariantViolation("sum of weights overflows 64 bits");
    if (profit_sum > kInt64Max) throw InvariantViolation("sum of profits overflows 64 bits");
    if (weight_sum <= capacity)
      throw InvariantViolation("sum of weights <= capacity (all items fit together)");

    KnapsackInstance inst;
    inst.capacity_ = capacity;
    inst.total_weight_ = static_cast<std::int64_t>(weight_sum);
    inst.total_profit_ = static_cast<std::int64_t>(profit_sum);

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&items](std::size_t a, std::size_t b) {
      return items[a].weight > items[b].weight;
    });

    inst.items_.reserve(items.size());
    inst.original_index_ = order;
    for (std::size_t pos : order) inst.items_.push_back(items[pos]);
    return inst;
  }

  static KnapsackInstance parse(std::string_view text, InstanceFormat format) {
    const std::vector<std::int64_t> tokens = tokenize(text);
    if (tokens.empty()) throw MalformedInput("empty input");

    const std::int64_t n = tokens[0];
    if (n < 1 || n > kMaxItemCount) throw MalformedInput("item count out of range");
    const std::size_t count = static_cast<std::size_t>(n);

    std::int64_t capacity = 0;
    std::vector<Item> items(count);
    if (format == InstanceFormat::canonical) {
      if (tokens.size() != 2 + 2 * count)
        throw MalformedInput("expected " + std::to_string(2 + 2 * count) +
                             " values for canonical format, found " +
                             std::to_string(tokens.size()));
      capacity = tokens[1];
      for (std::size_t i = 0; i < count; ++i) {
        items[i].profit = tokens[2 + 2 * i];
        items[i].weight = tokens[3 + 2 * i];
      }
    } else {
      if (tokens.size() != 2 + 3 * count)
        throw MalformedInput("expected " + std::to_string(2 + 3 * count) +
                             " values for literature format, found " +
                             std::to_string(tokens.size()));
      for (std::size_t i = 0; i < count; ++i) {
        if (tokens[1 + 3 * i] != static_cast<std::int64_t>(i) + 1)
          throw MalformedInput("item index mismatch at row " + std::to_string(i + 1));
        items[i].profit = tokens[2 + 3 * i];
        items[i].weight = tokens[3 + 3 * i];
      }
      capacity = tokens.back();
    }
    return create(capacity, std::move(items));
  }

  std::size_t size() const { return items_.size(); }
  std::int64_t capacity() const { return capacity_; }
  const std::vector<Item>& items() const { return items_; }
  std::int64_t profit(std::size_t i) const { return items_[i].profit; }
  std::int64_t weight(std::size_t i) const { return items_[i].weight; }
  std::int64_t total_weight() const { return total_weight_; }
  std::int64_t total_profit() const { return total_profit_; }

  /// Sorted position -> position in the original input order.
  const std::vector<std::size_t>& original_index() const { return original_index_; }

  /// The weights alone, in their non-increasing storage order.
  std::vector<std::int64_t> sorted_weights() const {
    std::vector<std::int64_t> weights(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i) weights[i] = items_[i].weight;
    return weights;
  }

  /// Canonical text form, items in their original input order, so that
  /// parse(serialize(x)) reproduces x exactly.
  std::string serialize() const {
    std::vector<Item> in_input_order(items_.size());
    for (std::size_t pos = 0; pos < items_.size(); ++pos)
      in_input_order[original_index_[pos]] = items_[pos];

    std::string out;
    out += std::to_string(items_.size());
    out += '\n';
    out += std::to_string(capacity_);
    out += '\n';
    for (const Item& item : in_input_order) {
      out += std::to_string(item.profit);
      out += ' ';
      out += std::to_string(item.weight);
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const KnapsackInstance& a, const KnapsackInstance& b) {
    return a.capacity_ == b.capacity_ && a.items_ == b.items_ &&
           a.original_index_ == b.original_index_;
  }

private:
  KnapsackInstance() = default;

  static constexpr std::int64_t kMaxItemCount = 10'000'000;

  static std::vector<std::int64_t> tokenize(std::string_view text) {
    std::vector<std::int64_t> tokens;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p != end) {
      if (*p == ' ' || *p == '\t' || *p == '\n' || *p == '\r') {
        ++p;
        continue;
      }
      std::int64_t value = 0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc{} || (next != end && *next != ' ' && *next != '\t' &&
                                *next != '\n' && *next != '\r'))
        throw MalformedInput("value " + std::to_string(tokens.size() + 1) +
                             " is not a decimal integer");
      tokens.push_back(value);
      p = next;
    }
    return tokens;
  }

  std::int64_t capacity_ = 0;
  std::vector<Item> items_;
  std::vector<std::size_t> original_index_;
  std::int64_t total_weight_ = 0;
  std::int64_t total_profit_ = 0;
};

/// Draws small random instances for brute-force cross-checks: n uniform in
/// [5,12], c uniform in [2,c_max], profits and weights uniform in [1,c].
/// Draws that leave all items fitting together are rejected and redrawn.
/// Deterministic for a fixed seed.
inline std::vector<KnapsackInstance> generate_control(std::size_t count, std::uint64_t seed,
                                                      std::int64_t c_max) {
  if (c_max < 2) throw InvariantViolation("c_max must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<KnapsackInstance> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::int64_t n = uniform_int(rng, 5, 12);
    const std::int64_t capacity = uniform_int(rng, 2, c_max);
    std::vector<Item> items(static_cast<std::size_t>(n));
    std::int64_t weight_sum = 0;
    for (Item& item : items) {
      item.profit = uniform_int(rng, 1, capacity);
      item.weight = uniform_int(rng, 1, capacity);
      weight_sum += item.weight;
    }
    if (weight_sum <= capacity) continue;
    out.push_back(KnapsackInstance::create(capacity, std::move(items)));
  }
  return out;
}

}  // namespace knapfeat
