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
#include <vector>

#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"

namespace edgepipe::partition {

/// Analytic timing of a linear pipeline with constant service times.
struct StagePrediction {
  std::vector<double> stage_compute;  // seconds, one per stage
  std::vector<double> cut_comm;       // seconds, one per cut
  double period = 0.0;                // bottleneck seconds per image
  double fill = 0.0;                  // first image end to end
  double throughput = 0.0;            // images per second in steady state
  double throughput_ratio = 0.0;      // total compute / period
  std::size_t n_images = 0;
  double makespan = 0.0;              // fill + (n - 1) * period, 0 for n = 0

  double makespan_for(std::size_t n) const noexcept {
    return n == 0 ? 0.0 : fill + static_cast<double>(n - 1) * period;
  }
};

/// Period per mode: blocks -> max(compute_i + comm_i); overlaps ->
/// max(max compute_i, max comm_i). Throws InfeasiblePlan for a plan
/// marked infeasible.
StagePrediction predict(const PartitionPlan& plan, const CostModel& cost, std::size_t n_images,
                        OverlapMode mode = OverlapMode::kSendBlocksCompute);

/// Bottleneck period only (no feasibility check); the objective the
/// partitioner and its oracle minimise.
double bottleneck_period(const PartitionPlan& plan, const CostModel& cost,
                         OverlapMode mode = OverlapMode::kSendBlocksCompute);

}  // namespace edgepipe::partition
