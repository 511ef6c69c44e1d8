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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/cnn/model.hpp"
#include "edgepipe/cnn/weights.hpp"
#include "edgepipe/partition/plan.hpp"
#include "edgepipe/runtime/frame.hpp"

namespace edgepipe::runtime {

/// Address value meaning "send results back over the control connection".
inline constexpr std::string_view kRequesterAddress = "requester";

/// Everything a worker needs to run one pipeline stage.
///
/// ASSIGN payload (LE): u32 stage_index, u32 stage_count, u32 layer_begin,
/// u32 layer_end, u32 len + model JSON, u32 len + downstream address, then
/// a weights blob (PCNW) holding the blocks for [layer_begin, layer_end).
/// The frame dims carry the expected input shape.
struct StageAssignment {
  std::uint32_t stage_index = 0;
  std::uint32_t stage_count = 1;
  cnn::LayerRange range;
  std::string model_json;
  std::string downstream{kRequesterAddress};
  std::vector<cnn::LayerWeights> blocks;
  cnn::TensorShape input_shape;

  bool last() const noexcept { return stage_index + 1 == stage_count; }
  friend bool operator==(const StageAssignment&, const StageAssignment&) = default;
};

Frame encode_assignment(const StageAssignment& a);
/// Throws ParseError on malformed payloads.
StageAssignment decode_assignment(const Frame& frame);

/// One assignment per plan stage. `worker_addresses[i]` hosts stage i; the
/// downstream of stage i is worker i+1, and of the last stage the requester.
/// Throws std::invalid_argument if counts disagree or the plan does not fit
/// the model.
std::vector<StageAssignment> make_assignments(const cnn::ModelGraph& model,
                                              const cnn::Weights& weights,
                                              const partition::PartitionPlan& plan,
                                              std::span<const std::string> worker_addresses);

}  // namespace edgepipe::runtime
