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

#include "edgepipe/bench/scenarios.hpp"

#include <stdexcept>

namespace edgepipe::bench {

const std::vector<Scenario>& scenario_catalog() {
  static const std::vector<Scenario> catalog = {
      {"I.1", 1, {}, {"Full LeNet"}},
      {"II.1", 2, {1}, {"conv1", "pool1 to ip2"}},
      {"II.2", 2, {2}, {"conv1 & pool1", "conv2 to ip2"}},
      {"II.3", 2, {3}, {"conv1 to conv2", "pool2 to ip2"}},
      {"II.4", 2, {4}, {"conv1 to pool2", "conv3 to ip2"}},
      {"II.5", 2, {5}, {"conv1 to conv3", "ip1 & ip2"}},
      {"II.6", 2, {6}, {"conv1 to ip1", "ip2"}},
      {"III.1", 3, {2, 4}, {"conv1 & pool1", "conv2 & pool2", "conv3 to ip2"}},
      {"III.2", 3, {2, 5}, {"conv1 & pool1", "conv2 to conv3", "ip1 & ip2"}},
  };
  return catalog;
}

const Scenario& find_scenario(std::string_view id) {
  for (const auto& s : scenario_catalog()) {
    if (s.id == id) return s;
  }
  throw std::invalid_argument("unknown scenario \"" + std::string(id) + "\"");
}

std::vector<Scenario> select_scenarios(std::string_view spec) {
  if (spec == "all") return scenario_catalog();
  std::vector<Scenario> out;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto id = spec.substr(0, comma);
    out.push_back(find_scenario(id));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("no scenarios selected");
  return out;
}

std::vector<std::string> stage_numerals(const Scenario& s) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  auto bounds = s.cuts;
  bounds.push_back(kLayerNumerals.size());
  for (auto end : bounds) {
    std::string r(kLayerNumerals[begin]);
    if (end - begin > 1) r += "-" + std::string(kLayerNumerals[end - 1]);
    out.push_back(std::move(r));
    begin = end;
  }
  return out;
}

partition::PartitionPlan scenario_plan(const Scenario& s, const partition::LayerProfile& profile) {
  return partition::make_plan(profile, s.cuts);
}

}  // namespace edgepipe::bench
