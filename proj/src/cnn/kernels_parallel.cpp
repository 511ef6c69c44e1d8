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

#include <omp.h>

#include <algorithm>

#include "edgepipe/cnn/kernels.hpp"

namespace edgepipe::cnn::kernels {
namespace {

inline float activate(Activation act, float v) {
  return act == Activation::kReLU ? (v > 0.0f ? v : 0.0f) : v;
}

// Below this many output elements the fork/join costs more than it saves.
constexpr long kMinParallelOutputs = 2048;

}  // namespace

namespace parallel {

void conv2d(const Convolution& c, Activation act, const TensorShape& in_shape,
            std::span<const float> in, std::span<const float> kernel,
            std::span<const float> bias, std::span<float> out) {
  const long ih = in_shape.height();
  const long iw = in_shape.width();
  const long k = c.kernel_size;
  const long s = c.stride;
  const long pad = c.padding;
  const long oh = (ih + 2 * pad - k) / s + 1;
  const long ow = (iw + 2 * pad - k) / s + 1;
  const long oc_count = c.out_channels;
  const long ic_count = c.in_channels;
  const float* in_data = in.data();
  const float* k_data = kernel.data();
  const float* b_data = bias.data();
  float* out_data = out.data();

#pragma omp parallel for collapse(2) schedule(static) if (oc_count * oh * ow >= kMinParallelOutputs)
  for (long oc = 0; oc < oc_count; ++oc) {
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        float acc = 0.0f;
        for (long ic = 0; ic < ic_count; ++ic) {
          const float* w = k_data + ((oc * ic_count + ic) * k) * k;
          const float* x = in_data + ic * ih * iw;
          for (long ky = 0; ky < k; ++ky) {
            const long y = oy * s + ky - pad;
            if (y < 0 || y >= ih) continue;
            for (long kx = 0; kx < k; ++kx) {
              const long xx = ox * s + kx - pad;
              if (xx < 0 || xx >= iw) continue;
              acc += w[ky * k + kx] * x[y * iw + xx];
            }
          }
        }
        out_data[(oc * oh + oy) * ow + ox] = activate(act, acc + b_data[oc]);
      }
    }
  }
}

void max_pool(const MaxPool& p, Activation act, const TensorShape& in_shape,
              std::span<const float> in, std::span<float> out) {
  const long ch = in_shape.channels();
  const long ih = in_shape.height();
  const long iw = in_shape.width();
  const long win = p.window;
  const long st = p.stride;
  const long oh = (ih - win) / st + 1;
  const long ow = (iw - win) / st + 1;
  const float* in_data = in.data();
  float* out_data = out.data();

#pragma omp parallel for schedule(static) if (ch * oh * ow >= kMinParallelOutputs)
  for (long c = 0; c < ch; ++c) {
    const float* x = in_data + c * ih * iw;
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        float m = x[(oy * st) * iw + ox * st];
        for (long ky = 0; ky < win; ++ky) {
          for (long kx = 0; kx < win; ++kx) {
            const float v = x[(oy * st + ky) * iw + ox * st + kx];
            if (v > m) m = v;
          }
        }
        out_data[(c * oh + oy) * ow + ox] = activate(act, m);
      }
    }
  }
}

void dense(const FullyConnected& f, Activation act, std::span<const float> in,
           std::span<const float> matrix, std::span<const float> bias, std::span<float> out) {
  const long outs = f.out_features;
  const long ins = f.in_features;
  const float* x = in.data();
  const float* m = matrix.data();
  const float* b = bias.data();
  float* y = out.data();

#pragma omp parallel for schedule(static) if (outs * ins >= kMinParallelOutputs * 16)
  for (long o = 0; o < outs; ++o) {
    const float* w = m + o * ins;
    float acc = 0.0f;
    for (long i = 0; i < ins; ++i) acc += w[i] * x[i];
    y[o] = activate(act, acc + b[o]);
  }
}

}  // namespace parallel

void set_threads(int n) noexcept { omp_set_num_threads(std::max(1, n)); }

int threads() noexcept { return omp_get_max_threads(); }

}  // namespace edgepipe::cnn::kernels
