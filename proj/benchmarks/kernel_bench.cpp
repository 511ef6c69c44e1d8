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

// Serial reference kernels against the OpenMP kernels, per LeNet layer and
// for the whole model. Arg 0 is the backend (0 serial, 1 parallel), arg 1 the
// OpenMP thread count.
#include <benchmark/benchmark.h>

#include "edgepipe/cnn/forward.hpp"
#include "edgepipe/cnn/kernels.hpp"
#include "edgepipe/cnn/lenet.hpp"
#include "edgepipe/cnn/weights.hpp"

using namespace edgepipe::cnn;

namespace {

struct Fixture {
  Lenet lenet = build_lenet();
  Weights weights = Weights::seeded(lenet.model, 1);
  std::vector<Tensor> inputs;  // input of each layer

  Fixture() {
    SeededUniform g(9);
    std::vector<float> v(lenet.model.input_shape().elements());
    for (auto& x : v) x = g.next(0.0f, 1.0f);
    inputs.emplace_back(lenet.model.input_shape(), std::move(v));
    for (std::size_t i = 0; i + 1 < lenet.model.size(); ++i) {
      inputs.push_back(forward(lenet.model.layer(i), weights.blocks()[i], inputs.back(),
                               kernels::Backend::kSerial));
    }
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

kernels::Backend backend_of(const benchmark::State& state) {
  return state.range(0) ? kernels::Backend::kParallel : kernels::Backend::kSerial;
}

void BM_Layer(benchmark::State& state, std::size_t layer) {
  const auto& f = fixture();
  kernels::set_threads(static_cast<int>(state.range(1)));
  const auto backend = backend_of(state);
  for (auto _ : state) {
    auto out = forward(f.lenet.model.layer(layer), f.weights.blocks()[layer], f.inputs[layer],
                       backend);
    benchmark::DoNotOptimize(out.values().data());
  }
}

void BM_LenetForward(benchmark::State& state) {
  const auto& f = fixture();
  kernels::set_threads(static_cast<int>(state.range(1)));
  const auto backend = backend_of(state);
  for (auto _ : state) {
    auto out = forward_model(f.lenet.model, f.weights, f.inputs[0], f.lenet.model.full_range(),
                             backend);
    benchmark::DoNotOptimize(out.values().data());
  }
}

void backends(benchmark::internal::Benchmark* b) {
  b->Args({0, 1});
  for (int t : {1, 2, 4}) b->Args({1, t});
  b->ArgNames({"parallel", "threads"});
}

}  // namespace

BENCHMARK_CAPTURE(BM_Layer, conv1, 0)->Apply(backends);
BENCHMARK_CAPTURE(BM_Layer, pool1, 1)->Apply(backends);
BENCHMARK_CAPTURE(BM_Layer, conv2, 2)->Apply(backends);
BENCHMARK_CAPTURE(BM_Layer, conv3, 4)->Apply(backends);
BENCHMARK_CAPTURE(BM_Layer, ip1, 5)->Apply(backends);
BENCHMARK(BM_LenetForward)->Apply(backends);

BENCHMARK_MAIN();
