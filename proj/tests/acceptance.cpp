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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance_test            run all criteria
//   acceptance_test --only 3   run criterion 3; exit 77 if it is skipped

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "edgepipe/bench/bench.hpp"
#include "edgepipe/bench/calibration.hpp"
#include "edgepipe/bench/scenarios.hpp"
#include "edgepipe/cnn/forward.hpp"
#include "edgepipe/cnn/lenet.hpp"
#include "edgepipe/partition/brute_force.hpp"
#include "edgepipe/partition/dpm.hpp"
#include "edgepipe/partition/predict.hpp"
#include "edgepipe/runtime/frame.hpp"
#include "edgepipe/runtime/images.hpp"
#include "edgepipe/runtime/local_cluster.hpp"
#include "edgepipe/runtime/requester.hpp"
#include "edgepipe/sim/simulator.hpp"
#include "test_support.hpp"

using namespace edgepipe;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::kPass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::kFail, std::move(d)}; }

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <typename... Args>
std::string format(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome lenet_fixture() {
  // Measured testbed table: output size and MACs per layer.
  const std::uint64_t out_sizes[7] = {3456, 864, 1024, 256, 120, 84, 10};
  const std::uint64_t macs[7] = {86400, 3460, 153600, 1020, 30720, 10080, 840};
  const auto profile = partition::LayerProfile::of(cnn::build_lenet().model);
  if (profile.size() != 7) return fail("expected 7 layers, got " + std::to_string(profile.size()));
  int exact = 0;
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < 7; ++i) {
    if (profile.output_elements[i] != out_sizes[i]) {
      return fail(format("layer %zu output %llu, expected %llu", i + 1,
                         static_cast<unsigned long long>(profile.output_elements[i]),
                         static_cast<unsigned long long>(out_sizes[i])));
    }
    const double rel = std::abs(static_cast<double>(profile.macs[i]) - macs[i]) / macs[i];
    if (rel > 0.005) {
      return fail(format("layer %zu MACs %llu vs %llu (%.3f%%)", i + 1,
                         static_cast<unsigned long long>(profile.macs[i]),
                         static_cast<unsigned long long>(macs[i]), rel * 100));
    }
    if (profile.macs[i] == macs[i]) {
      ++exact;
    } else {
      notes.push_back(format("layer %zu %llu vs %llu", i + 1,
                             static_cast<unsigned long long>(profile.macs[i]),
                             static_cast<unsigned long long>(macs[i])));
    }
  }
  if (exact != 5) return fail(format("%d exact MAC rows, expected 5", exact));
  return pass("7/7 output sizes exact, 5/7 MACs exact; " + join(notes, ", "));
}

// --- 2 ---------------------------------------------------------------------

Outcome oracle_equivalence() {
  using namespace partition;
  std::vector<LayerProfile> profiles = {LayerProfile::of(cnn::build_lenet().model),
                                        LayerProfile::lenet_reference()};
  const auto link = bench::table_link_fit();
  const std::vector<CostModel> costs = {
      CostModel::compute_only(1e-9),
      {1.9e-8, link.latency_seconds, link.seconds_per_element},
      {1e-9, 1e-3, 1e-5},
  };
  const std::uint64_t capacities[] = {5, 100, 500, 1000, 5000, 1'000'000};
  int cases = 0, infeasible = 0;
  auto check = [&](const LayerProfile& p, std::size_t w, std::uint64_t cap,
                   const CostModel& cost) -> std::string {
    ++cases;
    const auto dpm = dpm_partition({p, w, cap, cost});
    const auto oracle = brute_force_partition(p, w, cap, cost);
    if (dpm.feasible() != oracle.feasible()) return "feasibility differs";
    if (!oracle.feasible()) {
      ++infeasible;
      return {};
    }
    const double a = bottleneck_period(dpm, cost), b = bottleneck_period(oracle, cost);
    if (a != b) return format("period %.9g vs oracle %.9g", a, b);
    return {};
  };
  for (const auto& p : profiles) {
    for (std::size_t w : {1, 2, 3, 7}) {
      for (auto cap : capacities) {
        for (const auto& c : costs) {
          if (auto err = check(p, w, cap, c); !err.empty()) {
            return fail(format("LeNet W=%zu cap=%llu: ", w, static_cast<unsigned long long>(cap)) +
                        err);
          }
        }
      }
    }
  }
  testkit::Rng rng(2024);
  for (int round = 0; round < 150; ++round) {
    const auto layers = static_cast<std::size_t>(rng.range(1, 14));
    const auto p = testkit::random_profile(rng, layers);
    const auto w = static_cast<std::size_t>(rng.range(1, layers));
    const std::uint64_t cap = rng.coin() ? 1'000'000 : rng.range(1, 5000);
    if (auto err = check(p, w, cap, testkit::random_cost(rng)); !err.empty()) {
      return fail(format("random round %d: ", round) + err);
    }
  }
  return pass(format("%d cases agree (%d infeasible for both)", cases, infeasible));
}

// --- 3 ---------------------------------------------------------------------

Outcome bit_exact_distribution() {
  const auto lenet = cnn::build_lenet();
  const auto weights = cnn::Weights::seeded(lenet.model, 3);
  const auto images = runtime::synthetic_images(lenet.model.input_shape(), 50, 11);
  std::vector<cnn::Tensor> expected;
  for (const auto& x : images) {
    expected.push_back(cnn::forward_model(lenet.model, weights, x, lenet.model.full_range()));
  }
  const auto profile = partition::LayerProfile::of(lenet.model);
  auto connector = runtime::tcp_connector();
  for (const auto& s : bench::scenario_catalog()) {
    runtime::LocalCluster cluster(EDGEPIPE_CLI, s.workers);
    const auto result = runtime::run_requester(lenet.model, weights,
                                               bench::scenario_plan(s, profile), images,
                                               cluster.addresses(), *connector);
    for (int code : cluster.wait()) {
      if (code != 0) return fail(s.id + ": worker exit code " + std::to_string(code));
    }
    if (result.outputs.size() != images.size()) return fail(s.id + ": missing results");
    for (std::size_t k = 0; k < images.size(); ++k) {
      if (!cnn::bit_identical(result.outputs[k], expected[k])) {
        return fail(s.id + ": image " + std::to_string(k) + " differs");
      }
    }
  }
  return pass("9 scenarios x 50 images bit-identical over TCP worker processes");
}

// --- 4 ---------------------------------------------------------------------

Outcome table_reproduction() {
  const auto profile = partition::LayerProfile::lenet_reference();
  const auto costs = bench::calibrate_table(profile);
  auto ms = [&](const std::string& id) {
    const auto& s = bench::find_scenario(id);
    return sim::simulate(bench::scenario_plan(s, profile), costs.for_workers(s.workers),
                         bench::kTableImages)
               .makespan_seconds *
           1e3;
  };
  const double base = ms("I.1");
  std::vector<std::string> parts;
  bool ok = true;
  for (const auto& t : bench::table_targets()) {
    const double m = ms(t.scenario);
    const double ratio = 100.0 * base / m;
    const bool good = std::abs(m - t.makespan_ms) <= 0.02 * t.makespan_ms &&
                      std::abs(ratio - t.throughput_percent) <= 2.0;
    ok = ok && good;
    parts.push_back(format("%s %.3f ms (target %.3f) %.1f%% (target %.0f%%)", t.scenario.c_str(),
                           m, t.makespan_ms, ratio, t.throughput_percent));
  }
  return {ok ? Status::kPass : Status::kFail, join(parts, "; ")};
}

// --- 5 ---------------------------------------------------------------------

Outcome pipeline_speedup() {
  const unsigned cores = std::thread::hardware_concurrency();
  const auto lenet = cnn::build_lenet();
  bench::LocalSetup setup{EDGEPIPE_CLI, lenet.model, cnn::Weights::seeded(lenet.model, 5), 7, 1,
                          {}};
  const std::vector<std::size_t> counts = {1000};
  const auto rows = bench::bench_local(bench::scenario_catalog(), counts, setup);
  double best2 = 0, best3 = 0;
  std::string id2, id3;
  for (const auto& r : rows) {
    if (r.workers == 2 && r.throughput_ratio > best2) best2 = r.throughput_ratio, id2 = r.scenario;
    if (r.workers == 3 && r.throughput_ratio > best3) best3 = r.throughput_ratio, id3 = r.scenario;
  }
  const auto measured = format("best 2-stage %s %.2fx, best 3-stage %s %.2fx of I.1 (%u cores)",
                               id2.c_str(), best2, id3.c_str(), best3, cores);
  if (cores < 4) {
    return {Status::kSkip,
            measured + "; stages share too few cores to overlap, needs >= 4 cores"};
  }
  if (best2 > 1.2 && best3 >= best2) return pass(measured);
  return fail(measured);
}

// --- 6 ---------------------------------------------------------------------

Outcome simulator_analytic() {
  testkit::Rng rng(31337);
  int cases = 0;
  std::int64_t worst_ns = 0;
  double worst_fraction = 0;
  for (int round = 0; round < 500; ++round) {
    const auto layers = static_cast<std::size_t>(rng.range(1, 10));
    const auto profile = testkit::random_profile(rng, layers);
    std::vector<std::size_t> cuts;
    for (std::size_t b = 1; b < layers; ++b) {
      if (rng.coin()) cuts.push_back(b);
    }
    const auto plan = partition::make_plan(profile, cuts);
    const auto cost = testkit::random_cost(rng);
    const auto mode = rng.coin() ? partition::OverlapMode::kSendBlocksCompute
                                 : partition::OverlapMode::kSendOverlapsCompute;
    const std::size_t ns[] = {1, static_cast<std::size_t>(rng.range(2, 2000))};
    const auto report = sim::validate_against_analytic(plan, cost, ns, mode);
    ++cases;
    if (!report.ok) return fail(format("round %d: ", round) + report.describe());
    worst_ns = std::max(worst_ns, report.max_divergence_ns);
    if (report.period_ns > 0) {
      worst_fraction = std::max(worst_fraction, static_cast<double>(report.max_divergence_ns) /
                                                    static_cast<double>(report.period_ns));
    }
  }
  return pass(format("%d cases, max divergence %lld ns (%.2e of a period)", cases,
                     static_cast<long long>(worst_ns), worst_fraction));
}

// --- 7 ---------------------------------------------------------------------

std::vector<std::byte> bytes_of(std::initializer_list<unsigned> v) {
  std::vector<std::byte> out;
  for (auto b : v) out.push_back(static_cast<std::byte>(b));
  return out;
}

Outcome wire_round_trip() {
  using namespace runtime;
  Frame assign;
  assign.type = MessageType::kAssign;
  assign.dims = {1, 28, 28};
  assign.payload = bytes_of({0xaa, 0xbb});
  const std::pair<Frame, std::vector<std::byte>> golden[] = {
      {Frame::hello("ready"),
       bytes_of({'P', 'C', 'N', 'F', 1, 1, 0, 0, 0, 0, 0, 5, 0, 0, 0, 'r', 'e', 'a', 'd', 'y'})},
      {assign, bytes_of({'P', 'C', 'N', 'F', 1, 2, 0, 0, 0, 0, 3, 1, 0, 0, 0, 28, 0, 0, 0, 28, 0,
                         0, 0, 2, 0, 0, 0, 0xaa, 0xbb})},
      {Frame::tensor(0x01020304, cnn::Tensor(cnn::TensorShape({1, 1, 2}), {1.0f, -2.0f})),
       bytes_of({'P', 'C', 'N', 'F', 1, 3, 4, 3, 2, 1, 3, 1, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 8, 0,
                 0, 0, 0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0xc0})},
      {Frame::result(7, cnn::Tensor(cnn::TensorShape::flat(1), {0.5f})),
       bytes_of({'P', 'C', 'N', 'F', 1, 4, 7, 0, 0, 0, 1, 1, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0x3f})},
      {Frame::done(), bytes_of({'P', 'C', 'N', 'F', 1, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0})},
      {Frame::error("bad"),
       bytes_of({'P', 'C', 'N', 'F', 1, 6, 0, 0, 0, 0, 0, 3, 0, 0, 0, 'b', 'a', 'd'})},
  };
  for (const auto& [frame, bytes] : golden) {
    if (encode_frame(frame) != bytes) {
      return fail("golden encoding differs for type " +
                  std::to_string(static_cast<int>(frame.type)));
    }
    if (!(decode_frame(bytes) == frame)) {
      return fail("golden decoding differs for type " +
                  std::to_string(static_cast<int>(frame.type)));
    }
  }
  testkit::Rng rng(0xC0FFEE);
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    Frame f;
    f.type = static_cast<MessageType>(rng.range(1, 6));
    f.image_id = static_cast<std::uint32_t>(rng.next());
    if (f.type == MessageType::kTensor || f.type == MessageType::kResult) {
      std::uint64_t elems = 1;
      for (auto d = rng.range(1, 4); d > 0; --d) {
        f.dims.push_back(static_cast<std::uint32_t>(rng.range(1, 10)));
        elems *= f.dims.back();
      }
      for (std::uint64_t k = 0; k < 4 * elems; ++k) f.payload.push_back(std::byte(rng.next()));
    } else {
      for (auto d = rng.range(0, 4); d > 0; --d) {
        f.dims.push_back(static_cast<std::uint32_t>(rng.next()));
      }
      for (auto k = rng.range(0, 100); k > 0; --k) f.payload.push_back(std::byte(rng.next()));
    }
    if (!(decode_frame(encode_frame(f)) == f)) return fail(format("random frame %d", i));
  }
  return pass(format("6 golden vectors, %d random round trips", n));
}

// --- 8 ---------------------------------------------------------------------

Outcome bandwidth_honored() {
  using namespace partition;
  const std::vector<LayerProfile> profiles = {LayerProfile::of(cnn::build_lenet().model),
                                              LayerProfile::lenet_reference()};
  const std::vector<CostModel> costs = {CostModel::compute_only(1e-9), {1e-9, 1e-3, 1e-5}};
  int plans = 0, infeasible = 0;
  for (const auto& profile : profiles) {
    for (std::uint64_t cap : {5, 100, 500, 1000, 5000}) {
      for (std::size_t w = 1; w <= 7; ++w) {
        for (const auto& cost : costs) {
          const PartitionPlan candidates[] = {
              dpm_partition({profile, w, cap, cost}),
              brute_force_partition(profile, w, cap, cost),
              enforce_bandwidth(balanced_cuts(profile, w), cap, profile),
          };
          for (const auto& p : candidates) {
            ++plans;
            const bool fits = std::all_of(p.cut_sizes.begin(), p.cut_sizes.end(),
                                          [&](auto s) { return s <= cap; });
            if (p.feasible() && !fits) {
              return fail(format("W=%zu cap=%llu: feasible plan violates capacity (%s)", w,
                                 static_cast<unsigned long long>(cap), describe(p).c_str()));
            }
            if (!p.feasible()) ++infeasible;
          }
        }
      }
    }
  }
  return pass(format("%d plans checked, %d marked infeasible, no violations", plans, infeasible));
}

const char* label(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkip: return "SKIP";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgepipe acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "lenet-fixture", 1, lenet_fixture},
      {2, "partitioner-oracle-equivalence", 30, oracle_equivalence},
      {3, "bit-exact-distribution", 120, bit_exact_distribution},
      {4, "throughput-table-simulated", 5, table_reproduction},
      {5, "pipeline-speedup-measured", 300, pipeline_speedup},
      {6, "simulator-analytic-agreement", 30, simulator_analytic},
      {7, "wire-protocol-round-trip", 5, wire_round_trip},
      {8, "bandwidth-constraint-honored", 5, bandwidth_honored},
  };

  int failures = 0, skips = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::kPass && secs > c.limit_seconds) {
      o = fail(format("took %.2f s, limit %.0f s; ", secs, c.limit_seconds) + o.detail);
    }
    std::printf("%s c%d %s (%.2f s): %s\n", label(o.status), c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += o.status == Status::kFail;
    skips += o.status == Status::kSkip;
  }
  if (failures) return 1;
  return (only && skips) ? 77 : 0;
}
