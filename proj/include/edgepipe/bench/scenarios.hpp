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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "edgepipe/partition/plan.hpp"

namespace edgepipe::bench {

/// One way of spreading LeNet over workers. cuts use the partitioner's
/// convention (k = after the first k layers), so "cut after layer II" is 2.
struct Scenario {
  std::string id;  // "I.1", "II.1" ... "III.2"
  std::size_t workers = 1;
  std::vector<std::size_t> cuts;
  std::vector<std::string> stage_layers;  // per worker, e.g. "conv1 & pool1"

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Roman numerals of the LeNet layers in order: conv1=I, pool1=II, conv2=III,
/// pool2=IV, conv3=V, ip1=VI, ip2=VII.
inline constexpr std::array<std::string_view, 7> kLayerNumerals = {"I",  "II", "III", "IV",
                                                                   "V",  "VI", "VII"};
inline constexpr std::array<std::string_view, 7> kLayerNames = {
    "conv1", "pool1", "conv2", "pool2", "conv3", "ip1", "ip2"};

/// The nine cases: I.1 (one worker), II.1-II.6 (two workers, cut after layer
/// I..VI), III.1 (cuts after II and IV), III.2 (cuts after II and V).
const std::vector<Scenario>& scenario_catalog();

/// Throws std::invalid_argument for unknown ids.
const Scenario& find_scenario(std::string_view id);

/// Scenarios selected by a comma-separated id list or "all".
std::vector<Scenario> select_scenarios(std::string_view spec);

/// Stage ranges as numerals, e.g. {"I-II", "III-VII"}.
std::vector<std::string> stage_numerals(const Scenario& s);

partition::PartitionPlan scenario_plan(const Scenario& s, const partition::LayerProfile& profile);

}  // namespace edgepipe::bench
