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
#include <optional>
#include <string>
#include <vector>

#include "edgepipe/cnn/model.hpp"

namespace edgepipe::partition {

/// What the partitioner needs to know about a model: MACs and output element
/// count of each layer, in order.
struct LayerProfile {
  std::vector<std::uint64_t> macs;
  std::vector<std::uint64_t> output_elements;
  std::vector<std::string> names;

  static LayerProfile of(const cnn::ModelGraph& model);
  /// LeNet with the MAC column exactly as tabulated (pool rows 3460/1020).
  static LayerProfile lenet_reference();

  std::size_t size() const noexcept { return macs.size(); }
  std::uint64_t total_macs() const noexcept;
  /// prefix[k] = MACs of layers [0, k); prefix.size() == size() + 1.
  std::vector<std::uint64_t> prefix_macs() const;
};

enum class Feasibility { kUnchecked, kFeasible, kInfeasible };

/// Which step of the partitioner produced the plan.
enum class Refinement { kNone, kLocal, kGlobal };

std::string to_string(Feasibility f);
std::string to_string(Refinement r);

/// Contiguous split of a layer chain. A cut value k means "between layer k-1
/// and layer k" (equivalently: the first k layers are upstream of it), so
/// cuts are strictly increasing values in [1, num_layers - 1].
struct PartitionPlan {
  std::size_t num_layers = 0;
  std::vector<std::size_t> cuts;
  std::vector<std::uint64_t> stage_macs;
  std::vector<std::uint64_t> cut_sizes;
  Feasibility feasibility = Feasibility::kUnchecked;
  std::optional<std::uint64_t> capacity;
  Refinement refinement = Refinement::kNone;

  bool feasible() const noexcept { return feasibility == Feasibility::kFeasible; }
  std::size_t stages() const noexcept { return cuts.size() + 1; }
  std::vector<cnn::LayerRange> stage_ranges() const;
  std::uint64_t total_cut_elements() const noexcept;

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;
};

/// Builds stage_macs/cut_sizes for the given cuts. Throws
/// std::invalid_argument unless cuts are strictly increasing in
/// [1, size() - 1].
PartitionPlan make_plan(const LayerProfile& profile, std::vector<std::size_t> cuts);

/// Marks the plan feasible iff every cut_size <= capacity.
PartitionPlan evaluate_capacity(PartitionPlan plan, std::uint64_t capacity);

std::string describe(const PartitionPlan& plan);

}  // namespace edgepipe::partition
