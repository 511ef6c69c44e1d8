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

#include "edgepipe/sim/simulator.hpp"

#include <cmath>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "edgepipe/errors.hpp"
#include "edgepipe/partition/predict.hpp"

namespace edgepipe::sim {
namespace {

enum class EventKind { kComputeDone, kTransferDone };

struct Event {
  std::int64_t time;
  std::uint64_t seq;
  EventKind kind;
  std::size_t index;  // stage or link
  std::size_t image;

  bool operator>(const Event& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

struct Resource {
  bool busy = false;
  std::deque<std::size_t> waiting;
};

class Simulation {
 public:
  Simulation(const StageTimings& t, std::size_t n, OverlapMode mode)
      : t_(t), n_(n), mode_(mode), stages_(t.stages()), links_(t.comm_ns.size()),
        completion_(n, 0), busy_(t.stages(), 0) {}

  PipelineStats run() {
    for (std::size_t k = 0; k < n_; ++k) stages_[0].waiting.push_back(k);
    dispatch(0);
    while (!events_.empty()) {
      const Event e = events_.top();
      events_.pop();
      handle(e);
      dispatch(e.time);
    }
    return stats();
  }

 private:
  void schedule(std::int64_t time, EventKind kind, std::size_t index, std::size_t image) {
    events_.push(Event{time, seq_++, kind, index, image});
  }

  bool last_stage(std::size_t i) const { return i + 1 == stages_.size(); }

  void handle(const Event& e) {
    if (e.kind == EventKind::kComputeDone) {
      if (last_stage(e.index)) {
        completion_[e.image] = e.time;
        stages_[e.index].busy = false;
      } else if (mode_ == OverlapMode::kSendBlocksCompute) {
        // The stage stays occupied while its own link carries the output.
        links_[e.index].busy = true;
        busy_[e.index] += t_.comm_ns[e.index];
        schedule(e.time + t_.comm_ns[e.index], EventKind::kTransferDone, e.index, e.image);
      } else {
        stages_[e.index].busy = false;
        links_[e.index].waiting.push_back(e.image);
      }
    } else {
      links_[e.index].busy = false;
      if (mode_ == OverlapMode::kSendBlocksCompute) stages_[e.index].busy = false;
      stages_[e.index + 1].waiting.push_back(e.image);
    }
  }

  void dispatch(std::int64_t now) {
    for (std::size_t i = 0; i < stages_.size(); ++i) {
      auto& s = stages_[i];
      if (!s.busy && !s.waiting.empty()) {
        const auto image = s.waiting.front();
        s.waiting.pop_front();
        s.busy = true;
        busy_[i] += t_.compute_ns[i];
        schedule(now + t_.compute_ns[i], EventKind::kComputeDone, i, image);
      }
    }
    for (std::size_t i = 0; i < links_.size(); ++i) {
      auto& l = links_[i];
      if (!l.busy && !l.waiting.empty()) {
        const auto image = l.waiting.front();
        l.waiting.pop_front();
        l.busy = true;
        schedule(now + t_.comm_ns[i], EventKind::kTransferDone, i, image);
      }
    }
  }

  PipelineStats stats() const {
    PipelineStats s;
    s.n_images = n_;
    for (auto c : completion_) s.latency_seconds.push_back(static_cast<double>(c) * 1e-9);
    const std::int64_t makespan = n_ ? completion_.back() : 0;
    s.makespan_seconds = static_cast<double>(makespan) * 1e-9;
    s.throughput = makespan > 0 ? static_cast<double>(n_) / s.makespan_seconds : 0.0;
    if (n_ >= 2) {
      s.steady_period_seconds = static_cast<double>(completion_[n_ - 1] - completion_[n_ - 2]) * 1e-9;
    } else {
      s.steady_period_seconds = s.makespan_seconds;
    }
    for (auto b : busy_) s.stage_busy_seconds.push_back(static_cast<double>(b) * 1e-9);
    return s;
  }

  const StageTimings& t_;
  std::size_t n_;
  OverlapMode mode_;
  std::vector<Resource> stages_;
  std::vector<Resource> links_;
  std::vector<std::int64_t> completion_;
  std::vector<std::int64_t> busy_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
};

}  // namespace

void StageTimings::validate() const {
  if (compute_ns.empty()) throw std::invalid_argument("pipeline needs at least one stage");
  if (comm_ns.size() + 1 != compute_ns.size()) {
    throw std::invalid_argument("need one link time per pair of consecutive stages");
  }
  for (auto v : compute_ns) {
    if (v < 0) throw std::invalid_argument("negative compute time");
  }
  for (auto v : comm_ns) {
    if (v < 0) throw std::invalid_argument("negative link time");
  }
}

std::int64_t to_ns(double seconds) noexcept { return std::llround(seconds * 1e9); }

StageTimings timings_from(const partition::PartitionPlan& plan, const partition::CostModel& cost) {
  StageTimings t;
  for (auto m : plan.stage_macs) t.compute_ns.push_back(to_ns(partition::compute_seconds(m, cost)));
  for (auto s : plan.cut_sizes) t.comm_ns.push_back(to_ns(partition::comm_seconds(s, cost)));
  return t;
}

PipelineStats simulate(const StageTimings& timings, std::size_t n_images, OverlapMode mode) {
  timings.validate();
  return Simulation(timings, n_images, mode).run();
}

PipelineStats simulate(const partition::PartitionPlan& plan, const partition::CostModel& cost,
                       std::size_t n_images, OverlapMode mode) {
  if (plan.feasibility == partition::Feasibility::kInfeasible) {
    throw InfeasiblePlan("cannot simulate an infeasible plan: " + partition::describe(plan));
  }
  cost.validate();
  return simulate(timings_from(plan, cost), n_images, mode);
}

std::int64_t bottleneck_ns(const StageTimings& t, OverlapMode mode) {
  std::int64_t period = 0;
  for (std::size_t i = 0; i < t.stages(); ++i) {
    const std::int64_t own = t.compute_ns[i];
    const std::int64_t link = i < t.comm_ns.size() ? t.comm_ns[i] : 0;
    period = std::max(period, mode == OverlapMode::kSendBlocksCompute ? own + link
                                                                      : std::max(own, link));
  }
  return period;
}

std::int64_t analytic_makespan_ns(const StageTimings& t, std::size_t n_images, OverlapMode mode) {
  if (n_images == 0) return 0;
  std::int64_t fill = 0;
  for (auto v : t.compute_ns) fill += v;
  for (auto v : t.comm_ns) fill += v;
  return fill + static_cast<std::int64_t>(n_images - 1) * bottleneck_ns(t, mode);
}

std::string AnalyticReport::describe() const {
  std::ostringstream os;
  os << "mode " << partition::to_string(mode) << ", period " << period_ns
     << " ns, max divergence " << max_divergence_ns << " ns (" << (ok ? "within" : "EXCEEDS")
     << " one period)\n";
  for (const auto& p : points) {
    os << "  n=" << p.n_images << " simulated " << p.simulated_ns << " ns, closed form "
       << p.analytic_ns << " ns, predicted " << p.predicted_seconds << " s, divergence "
       << p.divergence_ns << " ns\n";
  }
  return os.str();
}

AnalyticReport validate_against_analytic(const partition::PartitionPlan& plan,
                                         const partition::CostModel& cost,
                                         std::span<const std::size_t> n_images, OverlapMode mode) {
  const auto timings = timings_from(plan, cost);
  AnalyticReport report;
  report.mode = mode;
  report.period_ns = bottleneck_ns(timings, mode);
  for (auto n : n_images) {
    AnalyticPoint p;
    p.n_images = n;
    p.simulated_ns = to_ns(simulate(timings, n, mode).makespan_seconds);
    p.analytic_ns = analytic_makespan_ns(timings, n, mode);
    p.predicted_seconds = partition::predict(plan, cost, n, mode).makespan;
    p.divergence_ns = std::llabs(p.simulated_ns - to_ns(p.predicted_seconds));
    report.max_divergence_ns = std::max(report.max_divergence_ns, p.divergence_ns);
    report.points.push_back(p);
  }
  report.ok = report.max_divergence_ns <= report.period_ns;
  return report;
}

}  // namespace edgepipe::sim
