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

#include "edgepipe/runtime/assignment.hpp"

#include <stdexcept>

#include "edgepipe/bytes.hpp"
#include "edgepipe/cnn/model_io.hpp"
#include "edgepipe/cnn/weights_io.hpp"

namespace edgepipe::runtime {

Frame encode_assignment(const StageAssignment& a) {
  Frame f;
  f.type = MessageType::kAssign;
  f.dims = a.input_shape.dims();
  auto& out = f.payload;
  bytes::put_u32(out, a.stage_index);
  bytes::put_u32(out, a.stage_count);
  bytes::put_u32(out, static_cast<std::uint32_t>(a.range.begin));
  bytes::put_u32(out, static_cast<std::uint32_t>(a.range.end));
  bytes::put_u32(out, static_cast<std::uint32_t>(a.model_json.size()));
  bytes::put_text(out, a.model_json);
  bytes::put_u32(out, static_cast<std::uint32_t>(a.downstream.size()));
  bytes::put_text(out, a.downstream);
  const auto blob = cnn::encode_weight_blocks(a.blocks);
  out.insert(out.end(), blob.begin(), blob.end());
  return f;
}

StageAssignment decode_assignment(const Frame& frame) {
  if (frame.type != MessageType::kAssign) {
    throw ParseError("expected ASSIGN, got " + std::string(to_string(frame.type)));
  }
  StageAssignment a;
  bytes::Reader r(frame.payload);
  try {
    a.stage_index = r.u32();
    a.stage_count = r.u32();
    a.range.begin = r.u32();
    a.range.end = r.u32();
    a.model_json = std::string(r.text(r.u32()));
    a.downstream = std::string(r.text(r.u32()));
  } catch (const std::out_of_range&) {
    throw ParseError("ASSIGN payload truncated");
  }
  if (a.stage_index >= a.stage_count) {
    throw ParseError("ASSIGN stage index " + std::to_string(a.stage_index) + " out of " +
                     std::to_string(a.stage_count));
  }
  if (a.range.begin >= a.range.end) throw ParseError("ASSIGN with empty layer range");
  a.blocks = cnn::decode_weight_blocks(r.take(r.remaining()));
  try {
    a.input_shape = cnn::TensorShape(frame.dims);
  } catch (const ShapeError& e) {
    throw ParseError(std::string("ASSIGN input shape: ") + e.what());
  }
  return a;
}

std::vector<StageAssignment> make_assignments(const cnn::ModelGraph& model,
                                              const cnn::Weights& weights,
                                              const partition::PartitionPlan& plan,
                                              std::span<const std::string> worker_addresses) {
  if (plan.num_layers != model.size()) {
    throw std::invalid_argument("plan covers " + std::to_string(plan.num_layers) +
                                " layers, model has " + std::to_string(model.size()));
  }
  if (worker_addresses.size() != plan.stages()) {
    throw std::invalid_argument("plan has " + std::to_string(plan.stages()) + " stages but " +
                                std::to_string(worker_addresses.size()) + " workers were given");
  }
  const auto json = cnn::model_to_json(model);
  const auto ranges = plan.stage_ranges();
  std::vector<StageAssignment> out;
  out.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    StageAssignment a;
    a.stage_index = static_cast<std::uint32_t>(i);
    a.stage_count = static_cast<std::uint32_t>(ranges.size());
    a.range = ranges[i];
    a.model_json = json;
    a.downstream = i + 1 < ranges.size() ? worker_addresses[i + 1] : std::string(kRequesterAddress);
    a.blocks = weights.slice(ranges[i]);
    a.input_shape = model.shape_before(ranges[i].begin);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace edgepipe::runtime
