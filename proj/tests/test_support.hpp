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
#include <vector>

#include "edgepipe/cnn/model.hpp"
#include "edgepipe/cnn/tensor.hpp"
#include "edgepipe/cnn/weights.hpp"
#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"

namespace edgepipe::testkit {

// Small deterministic generator for property tests (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_.next_u64(); }
  /// Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  bool coin() { return next() & 1; }

 private:
  cnn::SeededUniform gen_;
};

inline cnn::Tensor random_tensor(const cnn::TensorShape& shape, std::uint64_t seed) {
  cnn::SeededUniform g(seed);
  std::vector<float> v(shape.elements());
  for (auto& x : v) x = g.next(-1.0f, 1.0f);
  return cnn::Tensor(shape, std::move(v));
}

/// Random layer profile with `layers` entries.
inline partition::LayerProfile random_profile(Rng& rng, std::size_t layers) {
  partition::LayerProfile p;
  for (std::size_t i = 0; i < layers; ++i) {
    p.macs.push_back(rng.range(1, 200'000));
    p.output_elements.push_back(rng.range(1, 5'000));
    p.names.push_back("L" + std::to_string(i));
  }
  return p;
}

inline partition::CostModel random_cost(Rng& rng) {
  partition::CostModel c;
  c.time_per_mac = rng.uniform(1e-10, 5e-8);
  c.channel_latency = rng.coin() ? 0.0 : rng.uniform(0.0, 3e-3);
  c.channel_seconds_per_element = rng.coin() ? 0.0 : rng.uniform(0.0, 5e-6);
  return c;
}

}  // namespace edgepipe::testkit
