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
#include <string>
#include <string_view>
#include <variant>

#include "edgepipe/cnn/tensor.hpp"

namespace edgepipe::cnn {

struct Convolution {
  std::uint32_t kernel_size = 1;
  std::uint32_t in_channels = 1;
  std::uint32_t out_channels = 1;
  std::uint32_t stride = 1;
  std::uint32_t padding = 0;
  friend bool operator==(const Convolution&, const Convolution&) = default;
};

struct MaxPool {
  std::uint32_t window = 2;
  std::uint32_t stride = 2;
  friend bool operator==(const MaxPool&, const MaxPool&) = default;
};

/// Dense layer; a spatial input is flattened row-major first.
struct FullyConnected {
  std::uint32_t in_features = 1;
  std::uint32_t out_features = 1;
  friend bool operator==(const FullyConnected&, const FullyConnected&) = default;
};

enum class Activation { kNone, kReLU };

using LayerKind = std::variant<Convolution, MaxPool, FullyConnected>;

struct LayerSpec {
  LayerKind kind;
  Activation activation = Activation::kNone;
  std::string name;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

LayerSpec conv(std::uint32_t kernel, std::uint32_t in_channels, std::uint32_t out_channels,
               Activation act = Activation::kReLU, std::uint32_t stride = 1,
               std::uint32_t padding = 0, std::string name = {});
LayerSpec max_pool(std::uint32_t window, std::uint32_t stride, std::string name = {});
LayerSpec fully_connected(std::uint32_t in_features, std::uint32_t out_features,
                          Activation act = Activation::kReLU, std::string name = {});

/// Throws ShapeError if a parameter is out of range.
void validate(const LayerSpec& layer);

std::string_view kind_name(const LayerSpec& layer) noexcept;
std::string describe(const LayerSpec& layer);

/// Output extents; floor((in + 2*padding - k) / stride) + 1 per spatial dim.
/// Throws ShapeError naming the layer and the extents it expected.
TensorShape output_shape(const LayerSpec& layer, const TensorShape& input);

/// Multiply-accumulates for one forward pass. Pooling counts one operation
/// per window element compared.
std::uint64_t mac_count(const LayerSpec& layer, const TensorShape& input);

/// Parameter counts the layer needs: {kernel/matrix, bias}. Zero for pooling.
struct ParameterCounts {
  std::uint64_t kernel = 0;
  std::uint64_t bias = 0;
};
ParameterCounts parameter_counts(const LayerSpec& layer) noexcept;

}  // namespace edgepipe::cnn
