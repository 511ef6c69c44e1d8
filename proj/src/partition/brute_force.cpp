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

#include "edgepipe/partition/brute_force.hpp"

#include <limits>
#include <tuple>

#include "edgepipe/errors.hpp"
#include "edgepipe/partition/predict.hpp"

namespace edgepipe::partition {

__extension__ typedef unsigned __int128 u128;

std::uint64_t count_partitions(std::size_t layers, std::size_t workers) noexcept {
  if (workers == 0 || workers > layers) return 0;
  const std::uint64_t n = layers - 1;
  std::uint64_t k = workers - 1;
  if (k > n - k) k = n - k;
  u128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

PartitionPlan brute_force_partition(const LayerProfile& profile, std::size_t num_workers,
                                    std::uint64_t capacity, const CostModel& cost) {
  const std::size_t layers = profile.size();
  if (num_workers == 0 || num_workers > layers) {
    throw InfeasibleRequest("brute force: need 1 <= workers <= layers (" +
                            std::to_string(layers) + ")");
  }
  const auto count = count_partitions(layers, num_workers);
  if (count > kMaxEnumeratedPlans) {
    throw EnumerationLimit("brute force refused: " + std::to_string(count) +
                           " partitions exceed the limit of " +
                           std::to_string(kMaxEnumeratedPlans));
  }

  const std::size_t k = num_workers - 1;
  std::vector<std::size_t> cuts(k);
  for (std::size_t i = 0; i < k; ++i) cuts[i] = i + 1;

  std::optional<PartitionPlan> best;
  double best_period = std::numeric_limits<double>::infinity();
  std::uint64_t best_elements = std::numeric_limits<std::uint64_t>::max();
  std::optional<PartitionPlan> first;

  while (true) {
    auto plan = evaluate_capacity(make_plan(profile, cuts), capacity);
    if (!first) first = plan;
    if (plan.feasible()) {
      const double period = bottleneck_period(plan, cost);
      const std::uint64_t elements = plan.total_cut_elements();
      if (std::tie(period, elements) < std::tie(best_period, best_elements)) {
        best_period = period;
        best_elements = elements;
        best = std::move(plan);
      }
    }
    // Next combination in lexicographic order; cut i ranges up to layers - k + i.
    std::size_t i = k;
    while (i > 0 && cuts[i - 1] == layers - k + (i - 1)) --i;
    if (i == 0) break;
    ++cuts[i - 1];
    for (std::size_t j = i; j < k; ++j) cuts[j] = cuts[j - 1] + 1;
  }
  return best ? *best : *first;
}

PartitionPlan brute_force_partition(const cnn::ModelGraph& model, std::size_t num_workers,
                                    std::uint64_t capacity, const CostModel& cost) {
  return brute_force_partition(LayerProfile::of(model), num_workers, capacity, cost);
}

}  // namespace edgepipe::partition
