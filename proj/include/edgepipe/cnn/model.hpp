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
#include <string>
#include <vector>

#include "edgepipe/cnn/layer.hpp"
#include "edgepipe/cnn/tensor.hpp"

namespace edgepipe::cnn {

/// Half-open interval of layer indices [begin, end).
struct LayerRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin == end; }
  friend bool operator==(const LayerRange&, const LayerRange&) = default;
};

/// A feed-forward chain of layers. Construction checks the whole shape chain,
/// so every accepted model can be evaluated end to end.
class ModelGraph {
 public:
  ModelGraph(std::string name, TensorShape input_shape, std::vector<LayerSpec> layers);

  const std::string& name() const noexcept { return name_; }
  const TensorShape& input_shape() const noexcept { return input_shape_; }
  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return layers_.size(); }
  const LayerSpec& layer(std::size_t i) const { return layers_.at(i); }

  /// Shape entering layer i; shape_before(size()) is the model output.
  const TensorShape& shape_before(std::size_t i) const { return shapes_.at(i); }
  const TensorShape& shape_after(std::size_t i) const { return shapes_.at(i + 1); }
  const TensorShape& output_shape() const { return shapes_.back(); }

  std::uint64_t layer_macs(std::size_t i) const { return macs_.at(i); }
  std::uint64_t output_elements(std::size_t i) const { return shape_after(i).elements(); }

  LayerRange full_range() const noexcept { return {0, layers_.size()}; }

  friend bool operator==(const ModelGraph& a, const ModelGraph& b) {
    return a.name_ == b.name_ && a.input_shape_ == b.input_shape_ && a.layers_ == b.layers_;
  }

 private:
  std::string name_;
  TensorShape input_shape_;
  std::vector<LayerSpec> layers_;
  std::vector<TensorShape> shapes_;
  std::vector<std::uint64_t> macs_;
};

std::uint64_t total_macs(const ModelGraph& model) noexcept;

/// Throws std::out_of_range unless range lies within the model.
void check_range(const ModelGraph& model, LayerRange range);

}  // namespace edgepipe::cnn
