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

inline constexpr std::uint64_t kMaxEnumeratedPlans = 1'000'000;

/// Number of contiguous splits of `layers` layers into `workers` stages,
/// C(layers - 1, workers - 1), saturating at UINT64_MAX.
std::uint64_t count_partitions(std::size_t layers, std::size_t workers) noexcept;

/// Exhaustive oracle: enumerates every split in lexicographic cut order and
/// keeps the feasible plan with the smallest bottleneck period
/// (send-blocks-compute), then fewest communicated elements, then earliest
/// cuts. With no feasible split it returns the first split marked
/// infeasible. Throws EnumerationLimit above kMaxEnumeratedPlans and
/// InfeasibleRequest for invalid worker counts.
PartitionPlan brute_force_partition(const LayerProfile& profile, std::size_t num_workers,
                                    std::uint64_t capacity, const CostModel& cost);
PartitionPlan brute_force_partition(const cnn::ModelGraph& model, std::size_t num_workers,
                                    std::uint64_t capacity, const CostModel& cost);

}  // namespace edgepipe::partition
