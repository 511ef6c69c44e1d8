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

#include "edgepipe/partition/plan_io.hpp"

#include <fstream>
#include <sstream>

#include "edgepipe/errors.hpp"
#include "json.hpp"

namespace edgepipe::partition {
namespace {

using nlohmann::ordered_json;

Feasibility feasibility_from(const std::string& s) {
  if (s == "feasible") return Feasibility::kFeasible;
  if (s == "infeasible") return Feasibility::kInfeasible;
  if (s == "unchecked") return Feasibility::kUnchecked;
  throw ParseError("plan: unknown feasibility '" + s + "'");
}

Refinement refinement_from(const std::string& s) {
  if (s == "none") return Refinement::kNone;
  if (s == "local") return Refinement::kLocal;
  if (s == "global") return Refinement::kGlobal;
  throw ParseError("plan: unknown refinement '" + s + "'");
}

}  // namespace

std::string plan_to_json(const PlanFile& file) {
  const auto& plan = file.plan;
  ordered_json j;
  j["model"] = file.model_name;
  j["num_layers"] = plan.num_layers;
  j["num_workers"] = plan.stages();
  j["cuts"] = plan.cuts;
  auto stages = ordered_json::array();
  const auto ranges = plan.stage_ranges();
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    ordered_json s;
    s["begin"] = ranges[i].begin;
    s["end"] = ranges[i].end;
    if (i < plan.stage_macs.size()) s["macs"] = plan.stage_macs[i];
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["cut_sizes"] = plan.cut_sizes;
  j["feasibility"] = to_string(plan.feasibility);
  if (plan.capacity) j["capacity"] = *plan.capacity;
  j["refinement"] = to_string(plan.refinement);
  if (file.cost_model) {
    j["cost_model"] = ordered_json::parse(cost_model_to_json(CostModelSet{*file.cost_model, {}}));
  }
  return j.dump(2) + "\n";
}

PlanFile plan_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PlanFile file;
    file.model_name = j.value("model", std::string());
    auto& plan = file.plan;
    plan.num_layers = j.at("num_layers").get<std::size_t>();
    plan.cuts = j.at("cuts").get<std::vector<std::size_t>>();
    std::size_t prev = 0;
    for (auto c : plan.cuts) {
      if (c <= prev || c >= plan.num_layers) throw ParseError("plan: cuts must be strictly increasing in [1, num_layers - 1]");
      prev = c;
    }
    if (j.contains("num_workers") && j.at("num_workers").get<std::size_t>() != plan.stages()) {
      throw ParseError("plan: num_workers disagrees with cuts");
    }
    for (const auto& s : j.value("stages", nlohmann::json::array())) {
      if (s.contains("macs")) plan.stage_macs.push_back(s.at("macs").get<std::uint64_t>());
    }
    plan.cut_sizes = j.value("cut_sizes", std::vector<std::uint64_t>{});
    plan.feasibility = feasibility_from(j.value("feasibility", std::string("unchecked")));
    if (j.contains("capacity")) plan.capacity = j.at("capacity").get<std::uint64_t>();
    plan.refinement = refinement_from(j.value("refinement", std::string("none")));
    if (j.contains("cost_model")) {
      file.cost_model = cost_model_from_json(j.at("cost_model").dump()).base;
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed plan file: ") + e.what());
  }
}

PartitionPlan bind_plan(const PartitionPlan& plan, const LayerProfile& profile, bool check_macs) {
  if (plan.num_layers != profile.size()) {
    throw ParseError("plan covers " + std::to_string(plan.num_layers) + " layers, model has " +
                     std::to_string(profile.size()));
  }
  const auto expected = make_plan(profile, plan.cuts);
  if (check_macs && !plan.stage_macs.empty() && plan.stage_macs != expected.stage_macs) {
    throw ParseError("plan stage MACs disagree with the model");
  }
  if (!plan.cut_sizes.empty() && plan.cut_sizes != expected.cut_sizes) {
    throw ParseError("plan cut sizes disagree with the model");
  }
  PartitionPlan bound = expected;
  bound.feasibility = plan.feasibility;
  bound.capacity = plan.capacity;
  bound.refinement = plan.refinement;
  return bound;
}

PlanFile load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open plan file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return plan_from_json(ss.str());
}

void save_plan(const PlanFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write plan file " + path.string());
  out << plan_to_json(file);
}

}  // namespace edgepipe::partition
