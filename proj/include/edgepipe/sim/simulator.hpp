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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"
#include "edgepipe/stats.hpp"

namespace edgepipe::sim {

using partition::OverlapMode;

/// Per-image service times in integer nanoseconds: one compute time per
/// stage, one transfer time per link between consecutive stages.
struct StageTimings {
  std::vector<std::int64_t> compute_ns;
  std::vector<std::int64_t> comm_ns;

  std::size_t stages() const noexcept { return compute_ns.size(); }
  /// Throws std::invalid_argument unless comm_ns has stages() - 1 entries
  /// and all times are >= 0.
  void validate() const;
};

std::int64_t to_ns(double seconds) noexcept;

StageTimings timings_from(const partition::PartitionPlan& plan, const partition::CostModel& cost);

/// Discrete-event simulation. All images are ready at t = 0; stage i starts
/// image k once k has fully arrived and the stage is free; a link carries
/// one message at a time in FIFO order. Deterministic: ties between events
/// at the same instant resolve in scheduling order.
PipelineStats simulate(const StageTimings& timings, std::size_t n_images,
                       OverlapMode mode = OverlapMode::kSendOverlapsCompute);

/// Throws InfeasiblePlan for a plan marked infeasible.
PipelineStats simulate(const partition::PartitionPlan& plan, const partition::CostModel& cost,
                       std::size_t n_images,
                       OverlapMode mode = OverlapMode::kSendOverlapsCompute);

/// Closed form fill + (n - 1) * period over the same integer timings.
std::int64_t analytic_makespan_ns(const StageTimings& timings, std::size_t n_images,
                                  OverlapMode mode);
std::int64_t bottleneck_ns(const StageTimings& timings, OverlapMode mode);

struct AnalyticPoint {
  std::size_t n_images = 0;
  std::int64_t simulated_ns = 0;
  std::int64_t analytic_ns = 0;
  double predicted_seconds = 0.0;  // partition::predict in the same mode
  std::int64_t divergence_ns = 0;  // |simulated - predicted|, rounded
};

struct AnalyticReport {
  OverlapMode mode = OverlapMode::kSendOverlapsCompute;
  std::int64_t period_ns = 0;
  std::int64_t max_divergence_ns = 0;
  std::vector<AnalyticPoint> points;
  bool ok = true;  // every divergence <= one bottleneck period

  std::string describe() const;
};

/// Simulates each n and compares with the analytic predictor.
AnalyticReport validate_against_analytic(const partition::PartitionPlan& plan,
                                         const partition::CostModel& cost,
                                         std::span<const std::size_t> n_images,
                                         OverlapMode mode = OverlapMode::kSendOverlapsCompute);

}  // namespace edgepipe::sim
