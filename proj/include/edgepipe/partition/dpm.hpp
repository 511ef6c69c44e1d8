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

#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"

namespace edgepipe::partition {

struct PartitionRequest {
  LayerProfile profile;
  std::size_t num_workers = 1;
  /// Largest tensor (in elements) a link may carry per image.
  std::uint64_t channel_capacity = 1;
  CostModel cost_model;

  PartitionRequest() = default;
  PartitionRequest(LayerProfile p, std::size_t workers, std::uint64_t capacity, CostModel cost)
      : profile(std::move(p)), num_workers(workers), channel_capacity(capacity), cost_model(cost) {}
  PartitionRequest(const cnn::ModelGraph& model, std::size_t workers, std::uint64_t capacity,
                   CostModel cost)
      : PartitionRequest(LayerProfile::of(model), workers, capacity, cost) {}

  /// Throws InfeasibleRequest for 0 workers, more workers than layers, or
  /// zero capacity.
  void validate() const;
};

/// Greedy MAC balancing: cut j goes to the boundary whose cumulative MAC sum
/// is closest to j * total / workers (ties: smaller cut size, then earlier).
/// Feasibility is left unchecked.
PartitionPlan balanced_cuts(const LayerProfile& profile, std::size_t num_workers);
PartitionPlan balanced_cuts(const cnn::ModelGraph& model, std::size_t num_workers);

/// Moves every cut whose size exceeds capacity to the nearest later boundary
/// that fits (before the next cut), else the nearest earlier one (after the
/// previous cut). The result is marked infeasible if some cut cannot be
/// placed; callers can find the blocker in cut_sizes.
PartitionPlan enforce_bandwidth(const PartitionPlan& plan, std::uint64_t capacity,
                                const LayerProfile& profile);
PartitionPlan enforce_bandwidth(const PartitionPlan& plan, std::uint64_t capacity,
                                const cnn::ModelGraph& model);

/// Best plan among all moves of each cut by -1/0/+1 boundaries that stay
/// feasible, repeated until nothing improves. Objective: bottleneck period
/// (send-blocks-compute), then fewer communicated elements, then earliest
/// cuts.
PartitionPlan refine_locally(const PartitionPlan& plan, const LayerProfile& profile,
                             std::uint64_t capacity, const CostModel& cost);

/// Minimum-period feasible plan over all contiguous splits (dynamic
/// programming over boundaries). Same objective and tie-breaks as
/// refine_locally. Infeasible plan with the balanced cuts if none exists.
PartitionPlan optimal_partition(const LayerProfile& profile, std::size_t num_workers,
                                std::uint64_t capacity, const CostModel& cost);

/// balanced_cuts -> enforce_bandwidth -> refine_locally -> optimal_partition
/// (taken only when strictly better than the local result).
PartitionPlan dpm_partition(const PartitionRequest& request);

}  // namespace edgepipe::partition
