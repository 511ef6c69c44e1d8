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

#include <filesystem>
#include <optional>
#include <string>

#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/partition/plan.hpp"

// Plan file (JSON):
//
//   {
//     "model": "lenet",
//     "num_layers": 7,
//     "num_workers": 2,
//     "cuts": [2],
//     "stages": [{"begin": 0, "end": 2, "macs": 89856},
//                {"begin": 2, "end": 7, "macs": 196264}],
//     "cut_sizes": [864],
//     "feasibility": "feasible",          // "unchecked" | "infeasible"
//     "capacity": 1000,                   // optional
//     "refinement": "none",               // "local" | "global"
//     "cost_model": {...}                 // optional, cost-model schema
//   }
//
// "num_layers" and "cuts" define the plan; the derived fields are checked
// against the model when one is supplied.

namespace edgepipe::partition {

struct PlanFile {
  std::string model_name;
  PartitionPlan plan;
  std::optional<CostModel> cost_model;
};

std::string plan_to_json(const PlanFile& file);
PlanFile plan_from_json(const std::string& text);

/// Recomputes the derived fields from the profile, keeping feasibility,
/// capacity and refinement. Throws ParseError if fields present in the file
/// disagree with the profile. With check_macs = false only the layer count
/// and cut sizes must agree (a plan costed with tabulated MACs still runs).
PartitionPlan bind_plan(const PartitionPlan& plan, const LayerProfile& profile,
                        bool check_macs = true);

PlanFile load_plan(const std::filesystem::path& path);
void save_plan(const PlanFile& file, const std::filesystem::path& path);

}  // namespace edgepipe::partition
