#include "knapfeat/ims_counting.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "knapfeat/brute_force.hpp"
#include "knapfeat/errors.hpp"
#include "knapfeat/instance.hpp"

namespace knapfeat {
namespace {

std::uint64_t as_count(const LogCount& c) {
  return c.is_zero() ? 0 : static_cast<std::uint64_t>(std::llround(std::exp2(c.log2())));
}

/// Exact per-weight IMS counts straight from the 2^n enumeration.
std::vector<std::uint64_t> oracle_counts(const KnapsackInstance& inst) {
  return enumerate_ims(inst).weight_counts(inst.capacity());
}

void expect_profile_matches_oracle(const KnapsackInstance& inst) {
  const ImsWeightProfile profile = number_ims_weight(inst);
  const std::vector<std::uint64_t> expected = oracle_counts(inst);
  ASSERT_EQ(profile.counts.size(), expected.size());
  for (std::int64_t k = 1; k <= inst.capacity(); ++k)
    EXPECT_EQ(as_count(profile.counts[static_cast<std::size_t>(k)]),
              expected[static_cast<std::size_t>(k)])
        << "weight " << k;
}

TEST(NumberImsWeight, TwoItemsDistinctWeights) {
  // Oracle: of the 4 selections, {item2} (weight 2) and {item1} (weight 3)
  // are the maximal ones.
  const KnapsackInstance inst = KnapsackInstance::create(4, {{3, 3}, {2, 2}});
  expect_profile_matches_oracle(inst);
  const ImsWeightProfile profile = number_ims_weight(inst);
  EXPECT_EQ(as_count(profile.counts[2]), 1u);
  EXPECT_EQ(as_count(profile.counts[3]), 1u);
  EXPECT_EQ(as_count(profile.counts[1]), 0u);
  EXPECT_EQ(as_count(profile.counts[4]), 0u);
}

TEST(NumberImsWeight, TwoEqualSingletons) {
  // Both singletons are maximal; the empty set is not.
  const KnapsackInstance inst = KnapsackInstance::create(2, {{1, 2}, {1, 2}});
  expect_profile_matches_oracle(inst);
  EXPECT_EQ(as_count(number_ims_weight(inst).counts[2]), 2u);
}

TEST(NumberImsWeight, ThreeItems) {
  // Weights [2,1,1], c=3: maximal solutions are {2,1} twice (weight 3)
  // and {1,1} (weight 2), confirmed by the enumeration oracle.
  const KnapsackInstance inst = KnapsackInstance::create(3, {{1, 2}, {1, 1}, {1, 1}});
  expect_profile_matches_oracle(inst);
  const ImsWeightProfile profile = number_ims_weight(inst);
  EXPECT_EQ(as_count(profile.counts[2]), 1u);
  EXPECT_EQ(as_count(profile.counts[3]), 2u);
}

TEST(NumberImsWeight, MatchesOracleOnRandomInstances) {
  for (const KnapsackInstance& inst : generate_control(150, 21, 60))
    expect_profile_matches_oracle(inst);
}

TEST(NumberImsWeight, LargeCapacityAgainstOracle) {
  for (const KnapsackInstance& inst : generate_control(10, 22, 5000))
    expect_profile_matches_oracle(inst);
}

TEST(NumberImsWeight, CapacityBudgetIsEnforced) {
  const KnapsackInstance inst = KnapsackInstance::create(100, {{5, 60}, {5, 60}});
  EXPECT_THROW(number_ims_weight(inst, 50), CapacityTooLarge);
}

TEST(NumberImsWeight, TotalEqualsEnumerationSize) {
  for (const KnapsackInstance& inst : generate_control(50, 23, 40)) {
    const std::size_t expected = enumerate_ims(inst).solutions.size();
    EXPECT_EQ(as_count(number_ims_weight(inst).total()), expected);
    EXPECT_GE(expected, 1u);
  }
}

TEST(CountingFeatures, TwoPointSupport) {
  ImsWeightProfile profile;
  profile.capacity = 4;
  profile.counts.assign(5, LogCount::zero());
  profile.counts[2] = LogCount::of(1);
  profile.counts[3] = LogCount::of(1);
  const CountingFeatures f = counting_features(profile, 0.5);
  EXPECT_DOUBLE_EQ(f.cardinality.log2(), 1.0);
  EXPECT_EQ(f.min_weight, 2);
  EXPECT_EQ(f.max_weight, 3);
  EXPECT_NEAR(f.mean_weight, 2.5, 1e-12);
  EXPECT_NEAR(f.variance, 0.25, 1e-12);
  EXPECT_EQ(f.t1_seconds, 0.5);
}

TEST(CountingFeatures, SingleSupportPointHasZeroVariance) {
  ImsWeightProfile profile;
  profile.capacity = 2;
  profile.counts.assign(3, LogCount::zero());
  profile.counts[2] = LogCount::of(2);
  const CountingFeatures f = counting_features(profile, 1.0);
  EXPECT_EQ(f.min_weight, 2);
  EXPECT_EQ(f.max_weight, 2);
  EXPECT_EQ(f.mean_weight, 2.0);
  EXPECT_EQ(f.variance, 0.0);
}

TEST(CountingFeatures, ThreeItemMoments) {
  // Weights {2:1, 3:2} give mean 8/3 and variance 2/9.
  const KnapsackInstance inst = KnapsackInstance::create(3, {{1, 2}, {1, 1}, {1, 1}});
  const CountingFeatures f = counting_features(number_ims_weight(inst), 1.0);
  EXPECT_NEAR(f.mean_weight, 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(f.variance, 2.0 / 9.0, 1e-12);
}

TEST(CountingFeatures, MatchesEnumerationMoments) {
  for (const KnapsackInstance& inst : generate_control(80, 29, 80)) {
    const CountingFeatures f = counting_features(number_ims_weight(inst), 1.0);
    const ImsEnumeration enumerated = enumerate_ims(inst);

    double mean = 0.0;
    std::int64_t min_w = inst.capacity() + 1;
    std::int64_t max_w = 0;
    for (const ImsSolution& s : enumerated.solutions) {
      mean += static_cast<double>(s.weight);
      min_w = std::min(min_w, s.weight);
      max_w = std::max(max_w, s.weight);
    }
    mean /= static_cast<double>(enumerated.solutions.size());
    double variance = 0.0;
    for (const ImsSolution& s : enumerated.solutions) {
      const double d = static_cast<double>(s.weight) - mean;
      variance += d * d;
    }
    variance /= static_cast<double>(enumerated.solutions.size());

    EXPECT_EQ(f.min_weight, min_w);
    EXPECT_EQ(f.max_weight, max_w);
    EXPECT_NEAR(f.mean_weight, mean, 1e-9 * std::max(1.0, mean));
    EXPECT_NEAR(f.variance, variance, 1e-9 * std::max(1.0, variance));

    // Window implied by maximality: no IMS leaves w_1 or more capacity idle.
    EXPECT_GE(f.min_weight, inst.capacity() + 1 - inst.weight(0));
    EXPECT_LE(f.max_weight, inst.capacity());
    EXPECT_LE(f.min_weight, f.mean_weight);
    EXPECT_LE(f.mean_weight, f.max_weight);
    EXPECT_EQ(f.variance == 0.0, f.min_weight == f.max_weight);
  }
}

TEST(CountingFeatures, EmptyProfileSignalsUpstreamBug) {
  ImsWeightProfile profile;
  profile.capacity = 3;
  profile.counts.assign(4, LogCount::zero());
  EXPECT_THROW(counting_features(profile, 1.0), EmptyProfile);
}

TEST(ExcludePartition, ClassesPartitionTheSolutionSet) {
  // Each IMS is classified by its least heavy unselected item; class
  // sizes must add up to the whole set, and each member's weight must
  // lie in the window [c+1-w_i, c].
  for (const KnapsackInstance& inst : generate_control(80, 31, 60)) {
    const ImsEnumeration enumerated = enumerate_ims(inst);
    std::vector<std::uint64_t> class_sizes(inst.size(), 0);
    for (const ImsSolution& s : enumerated.solutions) {
      const std::size_t i = least_heavy_excluded(s.mask, inst.size());
      ++class_sizes[i];
      EXPECT_GE(s.weight, inst.capacity() + 1 - inst.weight(i));
      EXPECT_LE(s.weight, inst.capacity());
    }
    std::uint64_t total = 0;
    for (std::uint64_t size : class_sizes) total += size;
    EXPECT_EQ(total, enumerated.solutions.size());
  }
}

}  // namespace
}  // namespace knapfeat
