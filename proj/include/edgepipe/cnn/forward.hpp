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

#include "edgepipe/cnn/kernels.hpp"
#include "edgepipe/cnn/layer.hpp"
#include "edgepipe/cnn/model.hpp"
#include "edgepipe/cnn/tensor.hpp"
#include "edgepipe/cnn/weights.hpp"

namespace edgepipe::cnn {

/// Direct evaluation of one layer. Throws ShapeError on incompatible input
/// or weights, NumericError on non-finite input or output.
Tensor forward(const LayerSpec& layer, const LayerWeights& weights, const Tensor& input,
               kernels::Backend backend = kernels::Backend::kParallel);

/// Applies layers [range.begin, range.end) in order. `weights` holds blocks
/// for the whole model. An empty range returns the input unchanged.
Tensor forward_model(const ModelGraph& model, const Weights& weights, const Tensor& input,
                     LayerRange range, kernels::Backend backend = kernels::Backend::kParallel);

/// Same, with blocks for the range only (blocks[0] belongs to range.begin).
Tensor forward_range(const ModelGraph& model, std::span<const LayerWeights> blocks,
                     const Tensor& input, LayerRange range,
                     kernels::Backend backend = kernels::Backend::kParallel);

}  // namespace edgepipe::cnn
