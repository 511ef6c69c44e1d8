// Copyright 2026 The edgepipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "edgepipe/cnn/lenet.hpp"
#include "edgepipe/partition/brute_force.hpp"
#include "edgepipe/partition/dpm.hpp"
#include "edgepipe/partition/predict.hpp"
#include "test_support.hpp"

using namespace edgepipe;
using namespace edgepipe::partition;
using Cuts = std::vector<std::size_t>;
using Macs = std::vector<std::uint64_t>;

namespace {

const LayerProfile& lenet() {
  static const auto p = LayerProfile::lenet_reference();
  return p;
}

constexpr std::uint64_t kAmple = 1'000'000;
const CostModel kComputeOnly = CostModel::compute_only(1e-9);

void expect_covering(const PartitionPlan& plan, const LayerProfile& profile) {
  ASSERT_EQ(plan.stages(), plan.stage_macs.size());
  const auto ranges = plan.stage_ranges();
  std::size_t next = 0;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    EXPECT_EQ(ranges[i].begin, next);
    EXPECT_GT(ranges[i].end, ranges[i].begin);
    next = ranges[i].end;
    sum += plan.stage_macs[i];
  }
  EXPECT_EQ(next, profile.size());
  EXPECT_EQ(sum, profile.total_macs());
  for (std::size_t i = 0; i < plan.cuts.size(); ++i) {
    EXPECT_EQ(plan.cut_sizes[i], profile.output_elements[plan.cuts[i] - 1]);
  }
}

}  // namespace

TEST(Profile, LenetReferenceAndComputedAgreeOnTotals) {
  const auto computed = LayerProfile::of(cnn::build_lenet().model);
  EXPECT_EQ(lenet().total_macs(), 286120u);
  EXPECT_EQ(computed.total_macs(), 286120u);
  EXPECT_EQ(lenet().output_elements, computed.output_elements);
  EXPECT_EQ(lenet().prefix_macs(), (Macs{0, 86400, 89860, 243460, 244480, 275200, 285280, 286120}));
}

TEST(MakePlan, ValidatesCuts) {
  EXPECT_THROW(make_plan(lenet(), {0}), std::invalid_argument);
  EXPECT_THROW(make_plan(lenet(), {7}), std::invalid_argument);
  EXPECT_THROW(make_plan(lenet(), {3, 3}), std::invalid_argument);
  const auto p = make_plan(lenet(), {2, 4});
  EXPECT_EQ(p.stage_macs, (Macs{89860, 154620, 41640}));
  EXPECT_EQ(p.cut_sizes, (Macs{864, 256}));
  EXPECT_EQ(p.feasibility, Feasibility::kUnchecked);
  expect_covering(p, lenet());
}

TEST(BalancedCuts, Examples) {
  const auto one = balanced_cuts(lenet(), 1);
  EXPECT_TRUE(one.cuts.empty());
  EXPECT_EQ(one.stage_macs, (Macs{286120}));

  const auto two = balanced_cuts(lenet(), 2);
  EXPECT_EQ(two.cuts, (Cuts{2}));
  EXPECT_EQ(two.stage_macs, (Macs{89860, 196260}));
  EXPECT_EQ(two.feasibility, Feasibility::kUnchecked);

  const auto seven = balanced_cuts(lenet(), 7);
  EXPECT_EQ(seven.cuts, (Cuts{1, 2, 3, 4, 5, 6}));

  EXPECT_THROW(balanced_cuts(lenet(), 8), InfeasibleRequest);
  EXPECT_THROW(balanced_cuts(lenet(), 0), InfeasibleRequest);
}

TEST(BalancedCuts, ComputedLenetProfile) {
  const auto two = balanced_cuts(cnn::build_lenet().model, 2);
  EXPECT_EQ(two.cuts, (Cuts{2}));
  EXPECT_EQ(two.stage_macs, (Macs{89856, 196264}));
}

TEST(BalancedCuts, TiesPreferSmallerCut) {
  // Boundaries after layer 1 and 2 are equally close to the midpoint;
  // layer 2's output is smaller.
  LayerProfile p;
  p.macs = {15, 10, 15};  // prefix 0,15,25,40: target 20 -> |15-20| == |25-20|
  p.output_elements = {50, 5, 1};
  p.names = {"a", "b", "c"};
  EXPECT_EQ(balanced_cuts(p, 2).cuts, (Cuts{2}));
  p.output_elements = {5, 50, 1};
  EXPECT_EQ(balanced_cuts(p, 2).cuts, (Cuts{1}));
}

TEST(EnforceBandwidth, Examples) {
  const auto at2 = make_plan(lenet(), {2});
  const auto kept = enforce_bandwidth(at2, 1000, lenet());
  EXPECT_EQ(kept.cuts, (Cuts{2}));
  EXPECT_TRUE(kept.feasible());

  const auto moved = enforce_bandwidth(make_plan(lenet(), {1}), 1000, lenet());
  EXPECT_EQ(moved.cuts, (Cuts{2}));
  EXPECT_EQ(moved.cut_sizes, (Macs{864}));
  EXPECT_TRUE(moved.feasible());

  const auto blocked = enforce_bandwidth(at2, 5, lenet());
  EXPECT_FALSE(blocked.feasible());
  EXPECT_EQ(blocked.feasibility, Feasibility::kInfeasible);
  EXPECT_EQ(blocked.capacity, std::optional<std::uint64_t>(5));
}

TEST(EnforceBandwidth, FallsBackToEarlierBoundary) {
  LayerProfile p;
  p.macs = {1, 1, 1, 1};
  p.output_elements = {2, 100, 100, 1};
  p.names = {"a", "b", "c", "d"};
  const auto plan = enforce_bandwidth(make_plan(p, {2, 3}), 10, p);
  // Cut 2 (size 100) cannot move later past cut 3 and nothing in between
  // fits, so it moves back to boundary 1; cut 3 then still has size 100 and
  // nothing later before the end fits -> infeasible.
  EXPECT_EQ(plan.cuts[0], 1u);
  EXPECT_FALSE(plan.feasible());
}

TEST(Dpm, LenetTwoWorkersComputeOnly) {
  const auto plan = dpm_partition({lenet(), 2, kAmple, kComputeOnly});
  EXPECT_EQ(plan.cuts, (Cuts{2}));
  EXPECT_EQ(plan.stage_macs, (Macs{89860, 196260}));
  EXPECT_TRUE(plan.feasible());
  EXPECT_DOUBLE_EQ(bottleneck_period(plan, kComputeOnly), 196260e-9);
}

TEST(Dpm, LenetThreeWorkersComputeOnly) {
  const auto plan = dpm_partition({lenet(), 3, kAmple, kComputeOnly});
  EXPECT_EQ(plan.cuts, (Cuts{2, 3}));
  EXPECT_EQ(plan.stage_macs, (Macs{89860, 153600, 42660}));
  const auto oracle = brute_force_partition(lenet(), 3, kAmple, kComputeOnly);
  EXPECT_EQ(oracle.cuts, plan.cuts);
  EXPECT_EQ(count_partitions(7, 3), 15u);
}

TEST(Dpm, SingleWorkerIsWholeModel) {
  const auto plan = dpm_partition({lenet(), 1, 1, kComputeOnly});
  EXPECT_TRUE(plan.cuts.empty());
  EXPECT_TRUE(plan.feasible());
  EXPECT_DOUBLE_EQ(predict(plan, kComputeOnly, 1).period, 286120e-9);
}

TEST(Dpm, InfeasibleCapacityIsReportedNotThrown) {
  const auto plan = dpm_partition({lenet(), 2, 5, kComputeOnly});
  EXPECT_FALSE(plan.feasible());
  EXPECT_EQ(plan.cuts.size(), 1u);
}

TEST(Dpm, InvalidRequestsThrow) {
  EXPECT_THROW(dpm_partition({lenet(), 0, 10, kComputeOnly}), InfeasibleRequest);
  EXPECT_THROW(dpm_partition({lenet(), 8, 10, kComputeOnly}), InfeasibleRequest);
  EXPECT_THROW(dpm_partition({lenet(), 2, 0, kComputeOnly}), InfeasibleRequest);
}

TEST(BruteForce, LenetTwoWorkersMatchesDpm) {
  const auto oracle = brute_force_partition(lenet(), 2, kAmple, kComputeOnly);
  EXPECT_EQ(oracle.cuts, (Cuts{2}));
  EXPECT_EQ(count_partitions(7, 2), 6u);
}

TEST(BruteForce, OneLayerPerWorkerIsUnique) {
  const auto p = brute_force_partition(lenet(), 7, kAmple, kComputeOnly);
  EXPECT_EQ(p.cuts, (Cuts{1, 2, 3, 4, 5, 6}));
  EXPECT_TRUE(p.feasible());
}

TEST(BruteForce, ExpensiveChannelPrefersSmallCuts) {
  CostModel c{1e-9, 0.0, 1e-3};  // one element costs a million MACs
  const auto p = brute_force_partition(lenet(), 2, kAmple, c);
  // Every split's period is dominated by the cut transfer, so the winner is
  // the boundary with the smallest output: after layer VI (84 elements).
  EXPECT_EQ(p.cuts, (Cuts{6}));
  EXPECT_EQ(dpm_partition({lenet(), 2, kAmple, c}).cuts, p.cuts);
}

TEST(BruteForce, RefusesHugeEnumerations) {
  testkit::Rng rng(1);
  const auto big = testkit::random_profile(rng, 60);
  EXPECT_GT(count_partitions(60, 10), kMaxEnumeratedPlans);
  EXPECT_THROW(brute_force_partition(big, 10, kAmple, kComputeOnly), EnumerationLimit);
}

TEST(BruteForce, NoFeasiblePlanReturnsInfeasible) {
  const auto p = brute_force_partition(lenet(), 2, 5, kComputeOnly);
  EXPECT_FALSE(p.feasible());
  EXPECT_EQ(p.cuts, (Cuts{1}));
}

// Oracle agreement on random models, capacities and cost models.
TEST(Dpm, AgreesWithOracleOnRandomInputs) {
  testkit::Rng rng(77);
  for (int round = 0; round < 300; ++round) {
    const auto layers = static_cast<std::size_t>(rng.range(1, 12));
    const auto profile = testkit::random_profile(rng, layers);
    const auto workers = static_cast<std::size_t>(rng.range(1, layers));
    const std::uint64_t capacity = rng.coin() ? kAmple : rng.range(1, 5000);
    const auto cost = testkit::random_cost(rng);
    const auto dpm = dpm_partition({profile, workers, capacity, cost});
    const auto oracle = brute_force_partition(profile, workers, capacity, cost);
    expect_covering(dpm, profile);
    ASSERT_EQ(dpm.feasible(), oracle.feasible()) << "round " << round;
    if (!oracle.feasible()) continue;
    EXPECT_EQ(bottleneck_period(dpm, cost), bottleneck_period(oracle, cost)) << "round " << round;
    for (auto s : dpm.cut_sizes) EXPECT_LE(s, capacity);
  }
}

TEST(BruteForce, PeriodNonIncreasingInWorkersWithFreeChannels) {
  testkit::Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    const auto layers = static_cast<std::size_t>(rng.range(2, 10));
    const auto profile = testkit::random_profile(rng, layers);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t w = 1; w <= layers; ++w) {
      const auto p = brute_force_partition(profile, w, kAmple, kComputeOnly);
      const double period = bottleneck_period(p, kComputeOnly);
      EXPECT_LE(period, prev) << "workers " << w;
      prev = period;
    }
  }
}

TEST(Predict, SingleStageMakespan) {
  const auto plan = make_plan(lenet(), {});
  const auto cost = CostModel::compute_only(5.40103e-3 / 286120.0);
  const auto pred = predict(plan, cost, 100);
  EXPECT_NEAR(pred.makespan * 1e3, 540.103, 1e-9);
  EXPECT_NEAR(pred.throughput_ratio, 1.0, 1e-12);
}

TEST(Predict, TwoStagesWithCalibratedPeriod) {
  // Bottleneck stage 3.478 ms per image (compute + outgoing link).
  const auto plan = make_plan(lenet(), {2});
  CostModel cost;
  cost.channel_latency = 2.13e-3;
  cost.time_per_mac = (3.478e-3 - 2.13e-3) / 89860.0;
  const auto pred = predict(plan, cost, 100);
  EXPECT_DOUBLE_EQ(pred.period, std::max(89860 * cost.time_per_mac + 2.13e-3,
                                         196260 * cost.time_per_mac));
  const double rel = std::abs(pred.makespan * 1e3 - 347.780) / 347.780;
  EXPECT_LT(rel, 0.02);
}

TEST(Predict, IdealPipelineRatioIsWorkerCount) {
  LayerProfile p;
  p.macs = {500, 500, 500, 500};
  p.output_elements = {10, 10, 10, 10};
  p.names = {"a", "b", "c", "d"};
  for (std::size_t w : {1, 2, 4}) {
    const auto plan = dpm_partition({p, w, kAmple, kComputeOnly});
    EXPECT_DOUBLE_EQ(predict(plan, kComputeOnly, 10).throughput_ratio, static_cast<double>(w));
  }
}

TEST(Predict, RejectsInfeasiblePlan) {
  const auto plan = evaluate_capacity(make_plan(lenet(), {1}), 100);
  EXPECT_THROW(predict(plan, kComputeOnly, 10), InfeasiblePlan);
}

TEST(Predict, MakespanConsistency) {
  testkit::Rng rng(9);
  for (int round = 0; round < 100; ++round) {
    const auto layers = static_cast<std::size_t>(rng.range(1, 9));
    const auto profile = testkit::random_profile(rng, layers);
    const auto cost = testkit::random_cost(rng);
    const auto plan =
        dpm_partition({profile, static_cast<std::size_t>(rng.range(1, layers)), kAmple, cost});
    for (auto mode : {OverlapMode::kSendBlocksCompute, OverlapMode::kSendOverlapsCompute}) {
      const auto pred = predict(plan, cost, 1, mode);
      double sum = 0;
      for (double c : pred.stage_compute) sum += c;
      for (double c : pred.cut_comm) sum += c;
      EXPECT_NEAR(pred.makespan, sum, 1e-15);
      for (double c : pred.stage_compute) EXPECT_GE(pred.period, c);
      for (std::size_t n = 1; n < 5; ++n) {
        EXPECT_NEAR(pred.makespan_for(n + 1) - pred.makespan_for(n), pred.period, 1e-12);
      }
    }
    EXPECT_LE(bottleneck_period(plan, cost, OverlapMode::kSendOverlapsCompute),
              bottleneck_period(plan, cost, OverlapMode::kSendBlocksCompute));
  }
}
