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
#include <vector>

#include "edgepipe/cnn/layer.hpp"
#include "edgepipe/cnn/model.hpp"

namespace edgepipe::cnn {

/// Parameters of one layer. Convolution kernels are laid out
/// [out_channel][in_channel][ky][kx]; dense matrices [out][in].
/// Construction rejects non-finite values.
class LayerWeights {
 public:
  LayerWeights() = default;
  LayerWeights(std::vector<float> kernel, std::vector<float> bias);

  const std::vector<float>& kernel() const noexcept { return kernel_; }
  const std::vector<float>& bias() const noexcept { return bias_; }

  /// Throws ShapeError if block sizes differ from what the layer needs.
  void check_matches(const LayerSpec& layer) const;

  friend bool operator==(const LayerWeights&, const LayerWeights&) = default;

 private:
  std::vector<float> kernel_;
  std::vector<float> bias_;
};

class Weights {
 public:
  Weights() = default;
  /// Throws ShapeError unless blocks match the model layer by layer.
  Weights(const ModelGraph& model, std::vector<LayerWeights> blocks);

  /// Deterministic uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialisation.
  /// The generator is spelled out so the values are the same on every
  /// standard library.
  static Weights seeded(const ModelGraph& model, std::uint64_t seed);

  const std::vector<LayerWeights>& blocks() const noexcept { return blocks_; }
  const LayerWeights& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t size() const noexcept { return blocks_.size(); }

  std::vector<LayerWeights> slice(LayerRange range) const;

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::vector<LayerWeights> blocks_;
};

/// splitmix64-driven uniform floats in [lo, hi); shared by weight and input
/// generators.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next_u64() noexcept;
  float next(float lo, float hi) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace edgepipe::cnn
