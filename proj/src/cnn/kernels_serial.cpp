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

#include "edgepipe/cnn/kernels.hpp"

namespace edgepipe::cnn::kernels::serial {
namespace {

inline float activate(Activation act, float v) {
  return act == Activation::kReLU ? (v > 0.0f ? v : 0.0f) : v;
}

}  // namespace

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

  for (long oc = 0; oc < c.out_channels; ++oc) {
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        float acc = 0.0f;
        for (long ic = 0; ic < c.in_channels; ++ic) {
          const float* w = kernel.data() + ((oc * c.in_channels + ic) * k) * k;
          const float* x = in.data() + ic * ih * iw;
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
        out[(oc * oh + oy) * ow + ox] = activate(act, acc + bias[oc]);
      }
    }
  }
}

void max_pool(const MaxPool& p, Activation act, const TensorShape& in_shape,
              std::span<const float> in, std::span<float> out) {
  const long ch = in_shape.channels();
  const long ih = in_shape.height();
  const long iw = in_shape.width();
  const long oh = (ih - p.window) / p.stride + 1;
  const long ow = (iw - p.window) / p.stride + 1;

  for (long c = 0; c < ch; ++c) {
    const float* x = in.data() + c * ih * iw;
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        float m = x[(oy * p.stride) * iw + ox * p.stride];
        for (long ky = 0; ky < p.window; ++ky) {
          for (long kx = 0; kx < p.window; ++kx) {
            const float v = x[(oy * p.stride + ky) * iw + ox * p.stride + kx];
            if (v > m) m = v;
          }
        }
        out[(c * oh + oy) * ow + ox] = activate(act, m);
      }
    }
  }
}

void dense(const FullyConnected& f, Activation act, std::span<const float> in,
           std::span<const float> matrix, std::span<const float> bias, std::span<float> out) {
  for (long o = 0; o < f.out_features; ++o) {
    const float* w = matrix.data() + o * static_cast<long>(f.in_features);
    float acc = 0.0f;
    for (long i = 0; i < f.in_features; ++i) acc += w[i] * in[i];
    out[o] = activate(act, acc + bias[o]);
  }
}

}  // namespace edgepipe::cnn::kernels::serial
