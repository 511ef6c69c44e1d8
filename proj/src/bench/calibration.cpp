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

#include "edgepipe/bench/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "edgepipe/bench/scenarios.hpp"
#include "edgepipe/sim/simulator.hpp"

namespace edgepipe::bench {

const std::vector<CalibrationTarget>& table_targets() {
  static const std::vector<CalibrationTarget> targets = {
      {1, "I.1", 540.103, 100.0},
      {2, "II.2", 347.780, 155.0},
      {3, "III.1", 308.457, 175.0},
  };
  return targets;
}

LinkFit table_link_fit() {
  constexpr double kPool1Elements = 864, kPool1Ms = 2.13;
  constexpr double kPool2Elements = 256, kPool2Ms = 1.65;
  const double per_element_ms = (kPool1Ms - kPool2Ms) / (kPool1Elements - kPool2Elements);
  const double latency_ms = kPool1Ms - kPool1Elements * per_element_ms;
  return {latency_ms * 1e-3, per_element_ms * 1e-3};
}

double solve_time_per_mac(const partition::PartitionPlan& plan, const partition::CostModel& base,
                          std::size_t n_images, double target_seconds,
                          partition::OverlapMode mode) {
  auto makespan = [&](double tpm) {
    auto c = base;
    c.time_per_mac = tpm;
    return sim::simulate(plan, c, n_images, mode).makespan_seconds;
  };
  double lo = 1e-18;
  if (makespan(lo) > target_seconds) {
    throw std::invalid_argument("target makespan " + std::to_string(target_seconds) +
                                " s is below the communication time alone");
  }
  double hi = 1e-9;
  while (makespan(hi) < target_seconds) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > hi * 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (makespan(mid) < target_seconds ? lo : hi) = mid;
  }
  // The makespan is a step function of time_per_mac (whole nanoseconds);
  // take whichever end lands closer.
  return std::abs(makespan(lo) - target_seconds) <= std::abs(makespan(hi) - target_seconds) ? lo
                                                                                            : hi;
}

partition::CostModelSet calibrate_table(const partition::LayerProfile& profile,
                                        partition::OverlapMode mode) {
  const auto link = table_link_fit();
  partition::CostModelSet set;
  set.base.channel_latency = link.latency_seconds;
  set.base.channel_seconds_per_element = link.seconds_per_element;
  for (const auto& t : table_targets()) {
    const auto plan = scenario_plan(find_scenario(t.scenario), profile);
    const double tpm =
        solve_time_per_mac(plan, set.base, kTableImages, t.makespan_ms * 1e-3, mode);
    set.time_per_mac_by_workers[t.workers] = tpm;
  }
  set.base.time_per_mac = set.time_per_mac_by_workers.at(1);
  return set;
}

}  // namespace edgepipe::bench
