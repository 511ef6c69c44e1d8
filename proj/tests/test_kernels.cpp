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

#include <gtest/gtest.h>

#include "edgepipe/cnn/forward.hpp"
#include "edgepipe/cnn/lenet.hpp"
#include "test_support.hpp"

using namespace edgepipe;
using namespace edgepipe::cnn;

namespace {

// Restores the kernel thread count after a test.
class ThreadScope {
 public:
  explicit ThreadScope(int n) : saved_(kernels::threads()) { kernels::set_threads(n); }
  ~ThreadScope() { kernels::set_threads(saved_); }

 private:
  int saved_;
};

LayerWeights random_weights(const LayerSpec& layer, std::uint64_t seed) {
  const auto counts = parameter_counts(layer);
  SeededUniform g(seed);
  std::vector<float> k(counts.kernel), b(counts.bias);
  for (auto& v : k) v = g.next(-0.5f, 0.5f);
  for (auto& v : b) v = g.next(-0.5f, 0.5f);
  return {std::move(k), std::move(b)};
}

}  // namespace

// The parallel kernels split work by output element only, so they must agree
// with the serial reference to the bit, whatever the thread count.
TEST(Kernels, ParallelMatchesSerialOnRandomLayers) {
  testkit::Rng rng(2024);
  for (int threads : {1, 2, 3, 4}) {
    ThreadScope scope(threads);
    for (int round = 0; round < 40; ++round) {
      const auto ch = static_cast<std::uint32_t>(rng.range(1, 6));
      const auto hw = static_cast<std::uint32_t>(rng.range(6, 30));
      const TensorShape in_shape{ch, hw, hw};
      const auto k = static_cast<std::uint32_t>(rng.range(1, 5));
      const auto stride = static_cast<std::uint32_t>(rng.range(1, 2));
      const auto pad = static_cast<std::uint32_t>(rng.range(0, 2));
      const auto oc = static_cast<std::uint32_t>(rng.range(1, 24));
      std::vector<LayerSpec> layers = {
          conv(k, ch, oc, rng.coin() ? Activation::kReLU : Activation::kNone, stride, pad),
          max_pool(static_cast<std::uint32_t>(
                       rng.range(1, std::min<std::uint64_t>(3, (hw + 2 * pad - k) / stride + 1))),
                   static_cast<std::uint32_t>(rng.range(1, 3))),
      };
      const auto x = testkit::random_tensor(in_shape, rng.next());
      for (const auto& layer : layers) {
        TensorShape s = in_shape;
        if (std::holds_alternative<MaxPool>(layer.kind)) {
          s = output_shape(layers[0], in_shape);
        }
        const auto input = s == in_shape ? x : testkit::random_tensor(s, rng.next());
        const auto w = random_weights(layer, rng.next());
        const auto a = forward(layer, w, input, kernels::Backend::kSerial);
        const auto b = forward(layer, w, input, kernels::Backend::kParallel);
        ASSERT_TRUE(bit_identical(a, b)) << describe(layer) << " threads " << threads;
      }
      const auto in_f = static_cast<std::uint32_t>(rng.range(1, 2000));
      const auto out_f = static_cast<std::uint32_t>(rng.range(1, 300));
      const auto fc = fully_connected(in_f, out_f);
      const auto w = random_weights(fc, rng.next());
      const auto v = testkit::random_tensor(TensorShape::flat(in_f), rng.next());
      ASSERT_TRUE(bit_identical(forward(fc, w, v, kernels::Backend::kSerial),
                                forward(fc, w, v, kernels::Backend::kParallel)))
          << describe(fc) << " threads " << threads;
    }
  }
}

TEST(Kernels, LenetParallelMatchesSerial) {
  ThreadScope scope(4);
  const auto lenet = build_lenet();
  const auto w = Weights::seeded(lenet.model, 8);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto x = testkit::random_tensor(lenet.model.input_shape(), s);
    EXPECT_TRUE(bit_identical(
        forward_model(lenet.model, w, x, lenet.model.full_range(), kernels::Backend::kSerial),
        forward_model(lenet.model, w, x, lenet.model.full_range(), kernels::Backend::kParallel)));
  }
}

TEST(Kernels, ThreadCountIsClamped) {
  ThreadScope scope(0);
  EXPECT_EQ(kernels::threads(), 1);
}
