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

#include "edgepipe/bench/bench.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "edgepipe/runtime/images.hpp"
#include "edgepipe/runtime/local_cluster.hpp"
#include "edgepipe/runtime/transport.hpp"
#include "edgepipe/sim/simulator.hpp"

namespace edgepipe::bench {
namespace {

constexpr std::string_view kBaseline = "I.1";

std::vector<Scenario> with_baseline(std::span<const Scenario> scenarios) {
  std::vector<Scenario> out;
  bool has = false;
  for (const auto& s : scenarios) has = has || s.id == kBaseline;
  if (!has) out.push_back(find_scenario(kBaseline));
  out.insert(out.end(), scenarios.begin(), scenarios.end());
  return out;
}

// makespans[scenario][n] -> rows in request order, ratios against I.1.
std::vector<BenchRow> to_rows(std::string_view mode, std::span<const Scenario> scenarios,
                              std::span<const std::size_t> counts,
                              const std::map<std::string, std::map<std::size_t, double>>& ms) {
  std::vector<BenchRow> rows;
  for (const auto& s : scenarios) {
    for (auto n : counts) {
      if (n == 0) continue;
      BenchRow r;
      r.mode = mode;
      r.scenario = s.id;
      r.workers = s.workers;
      r.n_images = n;
      r.makespan_ms = ms.at(s.id).at(n);
      r.time_per_image_ms = r.makespan_ms / static_cast<double>(n);
      const double base = ms.at(std::string(kBaseline)).at(n);
      r.throughput_ratio = r.makespan_ms > 0 ? base / r.makespan_ms : 0.0;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

void append_range(std::vector<std::size_t>& out, std::size_t from, std::size_t to,
                  std::size_t step) {
  for (auto n = from; n <= to; n += step) {
    if (out.empty() || out.back() != n) out.push_back(n);
  }
}

}  // namespace

std::vector<std::size_t> short_sweep() {
  std::vector<std::size_t> out;
  append_range(out, 100, 1000, 100);
  return out;
}

std::vector<std::size_t> long_sweep() {
  std::vector<std::size_t> out;
  append_range(out, 1000, 10000, 1000);
  return out;
}

std::vector<std::size_t> parse_image_counts(std::string_view spec) {
  if (spec == "short") return short_sweep();
  if (spec == "long") return long_sweep();
  if (spec == "sweep") {
    auto out = short_sweep();
    append_range(out, 1000, 10000, 1000);
    return out;
  }
  std::vector<std::size_t> out;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto item = spec.substr(0, comma);
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (ec != std::errc{} || end != item.data() + item.size()) {
      throw std::invalid_argument("bad image count \"" + std::string(item) + "\"");
    }
    out.push_back(n);
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("no image counts given");
  return out;
}

std::vector<BenchRow> bench_simulate(std::span<const Scenario> scenarios,
                                     std::span<const std::size_t> image_counts,
                                     const partition::CostModelSet& costs,
                                     partition::OverlapMode mode) {
  const auto profile = partition::LayerProfile::lenet_reference();
  std::map<std::string, std::map<std::size_t, double>> ms;
  for (const auto& s : with_baseline(scenarios)) {
    const auto plan = scenario_plan(s, profile);
    const auto cost = costs.for_workers(s.workers);
    for (auto n : image_counts) {
      ms[s.id][n] = sim::simulate(plan, cost, n, mode).makespan_seconds * 1e3;
    }
  }
  return to_rows("simulate", scenarios, image_counts, ms);
}

std::vector<BenchRow> bench_local(std::span<const Scenario> scenarios,
                                  std::span<const std::size_t> image_counts,
                                  const LocalSetup& setup) {
  const auto profile = partition::LayerProfile::of(setup.model);
  std::size_t max_n = 0;
  for (auto n : image_counts) max_n = std::max(max_n, n);
  const auto images = runtime::synthetic_images(setup.model.input_shape(), max_n, setup.image_seed);
  auto connector = runtime::tcp_connector();

  std::map<std::string, std::map<std::size_t, double>> ms;
  for (const auto& s : with_baseline(scenarios)) {
    try {
      const auto plan = scenario_plan(s, profile);
      for (auto n : image_counts) {
        runtime::LocalCluster cluster(setup.worker_exe, s.workers, setup.kernel_threads);
        auto result = runtime::run_requester(setup.model, setup.weights, plan,
                                             std::span(images).first(n), cluster.addresses(),
                                             *connector, setup.requester);
        for (auto code : cluster.wait()) {
          if (code != 0) throw Error("worker exited with code " + std::to_string(code));
        }
        ms[s.id][n] = result.stats.makespan_seconds * 1e3;
      }
    } catch (const std::exception& e) {
      throw Error("scenario " + s.id + ": " + e.what());
    }
  }
  return to_rows("local-processes", scenarios, image_counts, ms);
}

std::string rows_to_csv(std::span<const BenchRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%.6f,%.6f,%.6f\n", r.mode.c_str(),
                  r.scenario.c_str(), r.workers, r.n_images, r.makespan_ms, r.time_per_image_ms,
                  r.throughput_ratio);
    out += buf;
  }
  return out;
}

}  // namespace edgepipe::bench
