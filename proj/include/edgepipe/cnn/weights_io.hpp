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
#include <filesystem>
#include <span>
#include <vector>

#include "edgepipe/cnn/weights.hpp"

// Weights file, all integers little-endian:
//
//   "PCNW"            4 bytes magic
//   version           u32 (= 1)
//   layer count       u32
//   per layer:
//     kernel count    u32
//     bias count      u32
//     kernel values   float32 LE x kernel count
//     bias values     float32 LE x bias count

namespace edgepipe::cnn {

std::vector<std::byte> encode_weight_blocks(std::span<const LayerWeights> blocks);
/// Throws ParseError on bad magic, version or truncation, NumericError on
/// non-finite values.
std::vector<LayerWeights> decode_weight_blocks(std::span<const std::byte> bytes);

void save_weights(const Weights& weights, const std::filesystem::path& path);
/// Loads and checks the blocks against `model`.
Weights load_weights(const ModelGraph& model, const std::filesystem::path& path);

}  // namespace edgepipe::cnn
