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

#include "edgepipe/partition/dpm.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "edgepipe/errors.hpp"
#include "edgepipe/partition/predict.hpp"

namespace edgepipe::partition {

__extension__ typedef unsigned __int128 u128;
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kNoPlan = std::numeric_limits<std::uint64_t>::max();

void check_workers(std::size_t layers, std::size_t workers) {
  if (workers == 0) throw InfeasibleRequest("at least one worker is required");
  if (workers > layers) {
    throw InfeasibleRequest("cannot split " + std::to_string(layers) + " layers across " +
                            std::to_string(workers) + " workers: every stage needs a layer");
  }
}

// Lexicographic objective: period, communicated elements, cut positions.
struct Score {
  double period = kInf;
  std::uint64_t elements = kNoPlan;
  std::vector<std::size_t> cuts;

  bool beats(const Score& o) const {
    return std::tie(period, elements, cuts) < std::tie(o.period, o.elements, o.cuts);
  }
  bool strictly_improves(const Score& o) const {
    return std::tie(period, elements) < std::tie(o.period, o.elements);
  }
};

Score score_of(const PartitionPlan& plan, const CostModel& cost) {
  if (!plan.feasible()) return Score{kInf, kNoPlan, plan.cuts};
  return Score{bottleneck_period(plan, cost), plan.total_cut_elements(), plan.cuts};
}

// Enumerates every cut vector within +-1 of `base`, strictly increasing,
// in range and under capacity.
void for_each_neighbour(const std::vector<std::size_t>& base, const LayerProfile& profile,
                        std::uint64_t capacity, std::vector<std::size_t>& current, std::size_t j,
                        const auto& visit) {
  if (j == base.size()) {
    visit(current);
    return;
  }
  const std::size_t layers = profile.size();
  for (int delta = -1; delta <= 1; ++delta) {
    if (delta < 0 && base[j] == 0) continue;
    const std::size_t c = base[j] + delta;
    const std::size_t lo = j == 0 ? 1 : current[j - 1] + 1;
    if (c < lo || c > layers - 1) continue;
    if (profile.output_elements[c - 1] > capacity) continue;
    current[j] = c;
    for_each_neighbour(base, profile, capacity, current, j + 1, visit);
  }
}

}  // namespace

void PartitionRequest::validate() const {
  check_workers(profile.size(), num_workers);
  if (channel_capacity < 1) throw InfeasibleRequest("channel capacity must be >= 1 element");
  cost_model.validate();
}

PartitionPlan balanced_cuts(const LayerProfile& profile, std::size_t num_workers) {
  const std::size_t layers = profile.size();
  check_workers(layers, num_workers);
  const auto prefix = profile.prefix_macs();
  const u128 total = prefix.back();
  const u128 workers = num_workers;

  std::vector<std::size_t> cuts;
  std::size_t prev = 0;
  for (std::size_t j = 1; j < num_workers; ++j) {
    // |prefix[k] - j * total / W| compared exactly as |prefix[k] * W - j * total|.
    const u128 goal = total * j;
    const std::size_t hi = layers - (num_workers - j);
    std::size_t best = prev + 1;
    u128 best_dist = 0;
    for (std::size_t k = prev + 1; k <= hi; ++k) {
      const u128 scaled = prefix[k] * workers;
      const u128 dist = scaled > goal ? scaled - goal : goal - scaled;
      const bool closer = k == prev + 1 || dist < best_dist ||
                          (dist == best_dist &&
                           profile.output_elements[k - 1] < profile.output_elements[best - 1]);
      if (closer) {
        best = k;
        best_dist = dist;
      }
    }
    cuts.push_back(best);
    prev = best;
  }
  return make_plan(profile, std::move(cuts));
}

PartitionPlan balanced_cuts(const cnn::ModelGraph& model, std::size_t num_workers) {
  return balanced_cuts(LayerProfile::of(model), num_workers);
}

PartitionPlan enforce_bandwidth(const PartitionPlan& plan, std::uint64_t capacity,
                                const LayerProfile& profile) {
  if (plan.num_layers != profile.size()) {
    throw std::invalid_argument("plan does not cover the given model");
  }
  const std::size_t layers = profile.size();
  auto fits = [&](std::size_t k) { return profile.output_elements[k - 1] <= capacity; };

  std::vector<std::size_t> cuts = plan.cuts;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    if (fits(cuts[j])) continue;
    const std::size_t lo = j == 0 ? 1 : cuts[j - 1] + 1;
    const std::size_t hi = j + 1 == cuts.size() ? layers - 1 : cuts[j + 1] - 1;
    std::size_t moved = 0;
    for (std::size_t k = cuts[j] + 1; k <= hi && !moved; ++k) {
      if (fits(k)) moved = k;
    }
    for (std::size_t k = cuts[j]; k > lo && !moved; --k) {
      if (fits(k - 1)) moved = k - 1;
    }
    if (moved) cuts[j] = moved;
  }
  auto out = evaluate_capacity(make_plan(profile, std::move(cuts)), capacity);
  out.refinement = plan.refinement;
  return out;
}

PartitionPlan enforce_bandwidth(const PartitionPlan& plan, std::uint64_t capacity,
                                const cnn::ModelGraph& model) {
  return enforce_bandwidth(plan, capacity, LayerProfile::of(model));
}

PartitionPlan refine_locally(const PartitionPlan& plan, const LayerProfile& profile,
                             std::uint64_t capacity, const CostModel& cost) {
  PartitionPlan current = evaluate_capacity(plan, capacity);
  Score current_score = score_of(current, cost);
  const auto start_cuts = current.cuts;

  while (true) {
    Score best = current_score;
    std::vector<std::size_t> scratch(current.cuts.size());
    for_each_neighbour(current.cuts, profile, capacity, scratch, 0,
                       [&](const std::vector<std::size_t>& cuts) {
                         const auto cand = evaluate_capacity(make_plan(profile, cuts), capacity);
                         Score s = score_of(cand, cost);
                         if (s.beats(best)) best = std::move(s);
                       });
    if (!best.strictly_improves(current_score)) break;
    current = evaluate_capacity(make_plan(profile, best.cuts), capacity);
    current_score = std::move(best);
  }
  current.refinement = current.cuts == start_cuts ? plan.refinement : Refinement::kLocal;
  return current;
}

PartitionPlan optimal_partition(const LayerProfile& profile, std::size_t num_workers,
                                std::uint64_t capacity, const CostModel& cost) {
  const std::size_t layers = profile.size();
  check_workers(layers, num_workers);
  const auto prefix = profile.prefix_macs();
  auto boundary_ok = [&](std::size_t k) {
    return k == 0 || k == layers || profile.output_elements[k - 1] <= capacity;
  };
  // Same arithmetic as bottleneck_period() in send-blocks-compute mode, so the
  // values compare exactly.
  auto stage_time = [&](std::size_t a, std::size_t b) {
    const double c = compute_seconds(prefix[b] - prefix[a], cost);
    return b < layers ? c + comm_seconds(profile.output_elements[b - 1], cost) : c;
  };

  // best[s][b]: smallest bottleneck covering layers [0, b) with s stages.
  std::vector<std::vector<double>> best(num_workers + 1, std::vector<double>(layers + 1, kInf));
  best[0][0] = 0.0;
  for (std::size_t s = 1; s <= num_workers; ++s) {
    for (std::size_t b = s; b <= layers; ++b) {
      if (!boundary_ok(b)) continue;
      for (std::size_t a = s - 1; a < b; ++a) {
        if (best[s - 1][a] == kInf) continue;
        best[s][b] = std::min(best[s][b], std::max(best[s - 1][a], stage_time(a, b)));
      }
    }
  }
  const double period = best[num_workers][layers];
  if (period == kInf) {
    auto fallback = evaluate_capacity(balanced_cuts(profile, num_workers), capacity);
    fallback.refinement = Refinement::kGlobal;
    return fallback;
  }

  // fewest[s][a]: fewest communicated elements covering [a, layers) with s
  // stages none slower than `period`.
  std::vector<std::vector<std::uint64_t>> fewest(num_workers + 1,
                                                 std::vector<std::uint64_t>(layers + 1, kNoPlan));
  for (std::size_t a = 0; a < layers; ++a) {
    if (boundary_ok(a) && stage_time(a, layers) <= period) fewest[1][a] = 0;
  }
  for (std::size_t s = 2; s <= num_workers; ++s) {
    for (std::size_t a = 0; a + s <= layers; ++a) {
      if (!boundary_ok(a)) continue;
      for (std::size_t b = a + 1; b + s - 1 <= layers; ++b) {
        if (!boundary_ok(b) || fewest[s - 1][b] == kNoPlan) continue;
        if (stage_time(a, b) > period) continue;
        fewest[s][a] = std::min(fewest[s][a], profile.output_elements[b - 1] + fewest[s - 1][b]);
      }
    }
  }

  std::vector<std::size_t> cuts;
  std::size_t a = 0;
  for (std::size_t s = num_workers; s >= 2; --s) {
    for (std::size_t b = a + 1; b + s - 1 <= layers; ++b) {
      if (!boundary_ok(b) || fewest[s - 1][b] == kNoPlan || stage_time(a, b) > period) continue;
      if (profile.output_elements[b - 1] + fewest[s - 1][b] == fewest[s][a]) {
        cuts.push_back(b);
        a = b;
        break;
      }
    }
  }
  auto plan = evaluate_capacity(make_plan(profile, std::move(cuts)), capacity);
  plan.refinement = Refinement::kGlobal;
  return plan;
}

PartitionPlan dpm_partition(const PartitionRequest& request) {
  request.validate();
  const auto& profile = request.profile;
  const auto& cost = request.cost_model;
  const auto capacity = request.channel_capacity;

  const auto balanced = balanced_cuts(profile, request.num_workers);
  const auto constrained = enforce_bandwidth(balanced, capacity, profile);
  auto local = refine_locally(constrained, profile, capacity, cost);

  auto global = optimal_partition(profile, request.num_workers, capacity, cost);
  if (global.feasible() && score_of(global, cost).strictly_improves(score_of(local, cost))) {
    return global;
  }
  return local;
}

}  // namespace edgepipe::partition
