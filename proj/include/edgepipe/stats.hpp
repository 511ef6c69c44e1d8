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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace edgepipe {

/// Timing of one batch through a pipeline, measured or simulated.
struct PipelineStats {
  std::size_t n_images = 0;
  std::vector<double> latency_seconds;  // per image, injection to result
  double makespan_seconds = 0.0;        // first injection to last result
  double throughput = 0.0;              // n_images / makespan, 0 when empty
  double steady_period_seconds = 0.0;   // gap between the last two results
  std::vector<double> stage_busy_seconds;
  /// Data bytes (TENSOR/RESULT frames) per link: requester->stage 0,
  /// stage 0->1, ..., last stage->requester. Empty for simulated runs.
  std::vector<std::uint64_t> link_bytes;
  double setup_seconds = 0.0;  // connection + assignment handshake

  double max_latency() const noexcept {
    return latency_seconds.empty()
               ? 0.0
               : *std::max_element(latency_seconds.begin(), latency_seconds.end());
  }
};

}  // namespace edgepipe
