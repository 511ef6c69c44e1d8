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

#include "edgepipe/cnn/model.hpp"

#include <numeric>
#include <stdexcept>

namespace edgepipe::cnn {

ModelGraph::ModelGraph(std::string name, TensorShape input_shape, std::vector<LayerSpec> layers)
    : name_(std::move(name)), input_shape_(std::move(input_shape)), layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("model '" + name_ + "' has no layers");
  if (input_shape_.rank() == 0) throw ShapeError("model '" + name_ + "' has no input shape");
  shapes_.reserve(layers_.size() + 1);
  macs_.reserve(layers_.size());
  shapes_.push_back(input_shape_);
  for (const auto& layer : layers_) {
    macs_.push_back(mac_count(layer, shapes_.back()));
    shapes_.push_back(cnn::output_shape(layer, shapes_.back()));
  }
}

std::uint64_t total_macs(const ModelGraph& model) noexcept {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < model.size(); ++i) sum += model.layer_macs(i);
  return sum;
}

void check_range(const ModelGraph& model, LayerRange range) {
  if (range.begin > range.end || range.end > model.size()) {
    throw std::out_of_range("layer range [" + std::to_string(range.begin) + ", " +
                            std::to_string(range.end) + ") outside model with " +
                            std::to_string(model.size()) + " layers");
  }
}

}  // namespace edgepipe::cnn
