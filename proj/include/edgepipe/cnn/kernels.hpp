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

#include <span>

#include "edgepipe/cnn/layer.hpp"
#include "edgepipe/cnn/tensor.hpp"

// Raw layer kernels. Two implementations with identical arithmetic:
// `serial` is the reference, `parallel` splits output channels/features
// across OpenMP threads. Every output element is produced by the same
// sequence of float operations in both, so results are bit-identical.
//
// Accumulation order for one output: acc = 0; for ic { for ky { for kx
// { acc += w * x } } }; out = act(acc + bias).
//
// Callers validate shapes; kernels assume `in` and `out` are sized for
// output_shape(layer, in_shape).

namespace edgepipe::cnn::kernels {

enum class Backend { kSerial, kParallel };

namespace serial {
void conv2d(const Convolution& c, Activation act, const TensorShape& in_shape,
            std::span<const float> in, std::span<const float> kernel,
            std::span<const float> bias, std::span<float> out);
void max_pool(const MaxPool& p, Activation act, const TensorShape& in_shape,
              std::span<const float> in, std::span<float> out);
void dense(const FullyConnected& f, Activation act, std::span<const float> in,
           std::span<const float> matrix, std::span<const float> bias, std::span<float> out);
}  // namespace serial

namespace parallel {
void conv2d(const Convolution& c, Activation act, const TensorShape& in_shape,
            std::span<const float> in, std::span<const float> kernel,
            std::span<const float> bias, std::span<float> out);
void max_pool(const MaxPool& p, Activation act, const TensorShape& in_shape,
              std::span<const float> in, std::span<float> out);
void dense(const FullyConnected& f, Activation act, std::span<const float> in,
           std::span<const float> matrix, std::span<const float> bias, std::span<float> out);
}  // namespace parallel

/// Threads used by the parallel backend in this process (wraps
/// omp_set_num_threads). Values < 1 are clamped to 1.
void set_threads(int n) noexcept;
int threads() noexcept;

}  // namespace edgepipe::cnn::kernels
