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

#include "edgepipe/partition/plan.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "edgepipe/cnn/lenet.hpp"

namespace edgepipe::partition {

LayerProfile LayerProfile::of(const cnn::ModelGraph& model) {
  LayerProfile p;
  for (std::size_t i = 0; i < model.size(); ++i) {
    p.macs.push_back(model.layer_macs(i));
    p.output_elements.push_back(model.output_elements(i));
    p.names.push_back(model.layer(i).name);
  }
  return p;
}

LayerProfile LayerProfile::lenet_reference() {
  const auto lenet = cnn::build_lenet();
  LayerProfile p = of(lenet.model);
  p.macs.assign(lenet.reference.macs.begin(), lenet.reference.macs.end());
  p.output_elements.assign(lenet.reference.output_sizes.begin(), lenet.reference.output_sizes.end());
  return p;
}

std::uint64_t LayerProfile::total_macs() const noexcept {
  return std::accumulate(macs.begin(), macs.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> LayerProfile::prefix_macs() const {
  std::vector<std::uint64_t> prefix(macs.size() + 1, 0);
  for (std::size_t i = 0; i < macs.size(); ++i) prefix[i + 1] = prefix[i] + macs[i];
  return prefix;
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "feasible";
    case Feasibility::kInfeasible: return "infeasible";
    case Feasibility::kUnchecked: break;
  }
  return "unchecked";
}

std::string to_string(Refinement r) {
  switch (r) {
    case Refinement::kLocal: return "local";
    case Refinement::kGlobal: return "global";
    case Refinement::kNone: break;
  }
  return "none";
}

std::vector<cnn::LayerRange> PartitionPlan::stage_ranges() const {
  std::vector<cnn::LayerRange> ranges;
  std::size_t begin = 0;
  for (auto c : cuts) {
    ranges.push_back({begin, c});
    begin = c;
  }
  ranges.push_back({begin, num_layers});
  return ranges;
}

std::uint64_t PartitionPlan::total_cut_elements() const noexcept {
  return std::accumulate(cut_sizes.begin(), cut_sizes.end(), std::uint64_t{0});
}

PartitionPlan make_plan(const LayerProfile& profile, std::vector<std::size_t> cuts) {
  const std::size_t layers = profile.size();
  if (layers == 0) throw std::invalid_argument("cannot partition an empty model");
  std::size_t prev = 0;
  for (auto c : cuts) {
    if (c <= prev || c >= layers) {
      throw std::invalid_argument("cuts must be strictly increasing in [1, " +
                                  std::to_string(layers - 1) + "]");
    }
    prev = c;
  }
  PartitionPlan plan;
  plan.num_layers = layers;
  plan.cuts = std::move(cuts);
  const auto prefix = profile.prefix_macs();
  for (const auto& r : plan.stage_ranges()) plan.stage_macs.push_back(prefix[r.end] - prefix[r.begin]);
  for (auto c : plan.cuts) plan.cut_sizes.push_back(profile.output_elements[c - 1]);
  return plan;
}

PartitionPlan evaluate_capacity(PartitionPlan plan, std::uint64_t capacity) {
  plan.capacity = capacity;
  plan.feasibility = Feasibility::kFeasible;
  for (auto s : plan.cut_sizes) {
    if (s > capacity) plan.feasibility = Feasibility::kInfeasible;
  }
  return plan;
}

std::string describe(const PartitionPlan& plan) {
  std::ostringstream os;
  os << plan.stages() << " stage(s), cuts {";
  for (std::size_t i = 0; i < plan.cuts.size(); ++i) os << (i ? ", " : "") << plan.cuts[i];
  os << "}, stage MACs {";
  for (std::size_t i = 0; i < plan.stage_macs.size(); ++i) os << (i ? ", " : "") << plan.stage_macs[i];
  os << "}, cut sizes {";
  for (std::size_t i = 0; i < plan.cut_sizes.size(); ++i) os << (i ? ", " : "") << plan.cut_sizes[i];
  os << "}, " << to_string(plan.feasibility);
  return os.str();
}

}  // namespace edgepipe::partition
