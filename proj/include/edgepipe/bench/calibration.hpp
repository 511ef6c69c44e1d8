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

#include <string>
#include <vector>

#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"

// Cost model fitted to the LeNet measurements on the Raspberry Pi testbed:
//
//   workers  case   time/image  100-image makespan  link times
//   1        I.1    5.40 ms     540.103 ms          -
//   2        II.2   3.48 ms     347.780 ms          2.13 ms
//   3        III.1  3.09 ms     308.457 ms          2.13 ms, 1.65 ms
//
// The time/image column is the 100-image makespan divided by 100, so it
// includes pipeline fill. Per worker count, time_per_mac is solved so the
// simulated 100-image makespan of that case equals the measured one; the
// link is a latency + per-element line through the two link times
// (864 elements -> 2.13 ms on the pool1 cut, 256 -> 1.65 ms on the pool2 cut).

namespace edgepipe::bench {

struct CalibrationTarget {
  std::size_t workers;
  std::string scenario;
  double makespan_ms;  // 100 images
  double throughput_percent;
};

const std::vector<CalibrationTarget>& table_targets();
inline constexpr std::size_t kTableImages = 100;

struct LinkFit {
  double latency_seconds;
  double seconds_per_element;
};
LinkFit table_link_fit();

/// Bisection on time_per_mac (all other fields of `base` kept) until the
/// simulated makespan of `plan` over n images is as close to
/// `target_seconds` as whole-nanosecond stage times allow (a 1 ns step in
/// the period moves the makespan by about n ns). Throws std::invalid_argument if the target is below what
/// communication alone takes.
double solve_time_per_mac(const partition::PartitionPlan& plan, const partition::CostModel& base,
                          std::size_t n_images, double target_seconds, partition::OverlapMode mode);

/// Cost models for 1, 2 and 3 workers over `profile` (normally
/// LayerProfile::lenet_reference()).
partition::CostModelSet calibrate_table(
    const partition::LayerProfile& profile,
    partition::OverlapMode mode = partition::OverlapMode::kSendOverlapsCompute);

}  // namespace edgepipe::bench
