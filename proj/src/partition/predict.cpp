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

#include "edgepipe/partition/predict.hpp"

#include <algorithm>
#include <numeric>

#include "edgepipe/errors.hpp"

namespace edgepipe::partition {
namespace {

double period_from(const std::vector<double>& compute, const std::vector<double>& comm,
                   OverlapMode mode) {
  double period = 0.0;
  if (mode == OverlapMode::kSendBlocksCompute) {
    for (std::size_t i = 0; i < compute.size(); ++i) {
      period = std::max(period, i < comm.size() ? compute[i] + comm[i] : compute[i]);
    }
  } else {
    for (double c : compute) period = std::max(period, c);
    for (double c : comm) period = std::max(period, c);
  }
  return period;
}

}  // namespace

double bottleneck_period(const PartitionPlan& plan, const CostModel& cost, OverlapMode mode) {
  std::vector<double> compute;
  std::vector<double> comm;
  for (auto m : plan.stage_macs) compute.push_back(compute_seconds(m, cost));
  for (auto s : plan.cut_sizes) comm.push_back(comm_seconds(s, cost));
  return period_from(compute, comm, mode);
}

StagePrediction predict(const PartitionPlan& plan, const CostModel& cost, std::size_t n_images,
                        OverlapMode mode) {
  if (plan.feasibility == Feasibility::kInfeasible) {
    throw InfeasiblePlan("cannot predict an infeasible plan: " + describe(plan));
  }
  cost.validate();
  StagePrediction p;
  for (auto m : plan.stage_macs) p.stage_compute.push_back(compute_seconds(m, cost));
  for (auto s : plan.cut_sizes) p.cut_comm.push_back(comm_seconds(s, cost));
  p.period = period_from(p.stage_compute, p.cut_comm, mode);
  const double total_compute = std::accumulate(p.stage_compute.begin(), p.stage_compute.end(), 0.0);
  p.fill = total_compute + std::accumulate(p.cut_comm.begin(), p.cut_comm.end(), 0.0);
  p.throughput = p.period > 0.0 ? 1.0 / p.period : 0.0;
  p.throughput_ratio = p.period > 0.0 ? total_compute / p.period : 0.0;
  p.n_images = n_images;
  p.makespan = p.makespan_for(n_images);
  return p;
}

}  // namespace edgepipe::partition
