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

#include "edgepipe/cnn/weights.hpp"

#include <cmath>

namespace edgepipe::cnn {
namespace {

void require_finite(const std::vector<float>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NumericError(std::string("non-finite ") + what + " weight at index " +
                         std::to_string(i));
    }
  }
}

std::uint64_t fan_in(const LayerSpec& layer) {
  if (auto* c = std::get_if<Convolution>(&layer.kind)) {
    return std::uint64_t{c->in_channels} * c->kernel_size * c->kernel_size;
  }
  if (auto* f = std::get_if<FullyConnected>(&layer.kind)) return f->in_features;
  return 1;
}

}  // namespace

LayerWeights::LayerWeights(std::vector<float> kernel, std::vector<float> bias)
    : kernel_(std::move(kernel)), bias_(std::move(bias)) {
  require_finite(kernel_, "kernel");
  require_finite(bias_, "bias");
}

void LayerWeights::check_matches(const LayerSpec& layer) const {
  const auto need = parameter_counts(layer);
  if (kernel_.size() != need.kernel || bias_.size() != need.bias) {
    throw ShapeError("weights for " + describe(layer) + " need " + std::to_string(need.kernel) +
                     " kernel + " + std::to_string(need.bias) + " bias values, got " +
                     std::to_string(kernel_.size()) + " + " + std::to_string(bias_.size()));
  }
}

Weights::Weights(const ModelGraph& model, std::vector<LayerWeights> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.size() != model.size()) {
    throw ShapeError("model has " + std::to_string(model.size()) + " layers but weights have " +
                     std::to_string(blocks_.size()) + " blocks");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i].check_matches(model.layer(i));
}

Weights Weights::seeded(const ModelGraph& model, std::uint64_t seed) {
  SeededUniform rng(seed);
  std::vector<LayerWeights> blocks;
  blocks.reserve(model.size());
  for (const auto& layer : model.layers()) {
    const auto need = parameter_counts(layer);
    const float bound = 1.0f / std::sqrt(static_cast<float>(fan_in(layer)));
    std::vector<float> kernel(need.kernel);
    std::vector<float> bias(need.bias);
    for (auto& w : kernel) w = rng.next(-bound, bound);
    for (auto& b : bias) b = rng.next(-bound, bound);
    blocks.emplace_back(std::move(kernel), std::move(bias));
  }
  return Weights(model, std::move(blocks));
}

std::vector<LayerWeights> Weights::slice(LayerRange range) const {
  if (range.begin > range.end || range.end > blocks_.size()) {
    throw std::out_of_range("weight slice outside model");
  }
  return {blocks_.begin() + static_cast<std::ptrdiff_t>(range.begin),
          blocks_.begin() + static_cast<std::ptrdiff_t>(range.end)};
}

std::uint64_t SeededUniform::next_u64() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

float SeededUniform::next(float lo, float hi) noexcept {
  // 24 random mantissa bits -> [0, 1) exactly representable.
  const float unit = static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
  return lo + (hi - lo) * unit;
}

}  // namespace edgepipe::cnn
