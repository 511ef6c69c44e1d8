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

#include "edgepipe/cnn/forward.hpp"

namespace edgepipe::cnn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Tensor forward(const LayerSpec& layer, const LayerWeights& weights, const Tensor& input,
               kernels::Backend backend) {
  const TensorShape out_shape = output_shape(layer, input.shape());
  weights.check_matches(layer);
  if (!input.all_finite()) {
    throw NumericError("non-finite input to layer " + describe(layer));
  }

  Tensor out(out_shape);
  const bool par = backend == kernels::Backend::kParallel;
  std::visit(overloaded{
                 [&](const Convolution& c) {
                   (par ? kernels::parallel::conv2d : kernels::serial::conv2d)(
                       c, layer.activation, input.shape(), input.values(), weights.kernel(),
                       weights.bias(), out.values());
                 },
                 [&](const MaxPool& p) {
                   (par ? kernels::parallel::max_pool : kernels::serial::max_pool)(
                       p, layer.activation, input.shape(), input.values(), out.values());
                 },
                 [&](const FullyConnected& f) {
                   (par ? kernels::parallel::dense : kernels::serial::dense)(
                       f, layer.activation, input.values(), weights.kernel(), weights.bias(),
                       out.values());
                 },
             },
             layer.kind);

  if (!out.all_finite()) {
    throw NumericError("layer " + describe(layer) + " produced a non-finite value");
  }
  return out;
}

Tensor forward_range(const ModelGraph& model, std::span<const LayerWeights> blocks,
                     const Tensor& input, LayerRange range, kernels::Backend backend) {
  check_range(model, range);
  if (blocks.size() != range.size()) {
    throw ShapeError("range of " + std::to_string(range.size()) + " layers given " +
                     std::to_string(blocks.size()) + " weight blocks");
  }
  const TensorShape& expected = model.shape_before(range.begin);
  if (input.shape() != expected) {
    throw ShapeError("input to layer " + std::to_string(range.begin) + " must be " +
                     expected.to_string() + ", got " + input.shape().to_string());
  }
  Tensor x = input;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    x = forward(model.layer(i), blocks[i - range.begin], x, backend);
  }
  return x;
}

Tensor forward_model(const ModelGraph& model, const Weights& weights, const Tensor& input,
                     LayerRange range, kernels::Backend backend) {
  check_range(model, range);
  if (weights.size() != model.size()) {
    throw ShapeError("weights do not cover model '" + model.name() + "'");
  }
  return forward_range(
      model, std::span(weights.blocks()).subspan(range.begin, range.size()), input, range,
      backend);
}

}  // namespace edgepipe::cnn
