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

// edgepipe: distributed LeNet inference over a pipeline of workers.
//
//   edgepipe worker    --listen 127.0.0.1:0
//   edgepipe run       --model m.json --weights w.bin --plan p.json --images 100
//                      --workers host:port,host:port --stats-out stats.csv
//   edgepipe simulate  --plan p.json --cost-model c.json --images 100 --out sim.csv
//   edgepipe bench     --scenario all --images 100 --mode simulate --cost-model c.json --out dir
//   edgepipe partition --model m.json --workers 2 --capacity 1000 --out p.json
//   edgepipe calibrate --out c.json
//   edgepipe lenet     --out m.json --weights-out w.bin --seed 7
//   edgepipe report    --out dir run1.csv run2.csv

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "edgepipe/bench/bench.hpp"
#include "edgepipe/bench/calibration.hpp"
#include "edgepipe/bench/report.hpp"
#include "edgepipe/cnn/lenet.hpp"
#include "edgepipe/cnn/model_io.hpp"
#include "edgepipe/cnn/weights_io.hpp"
#include "edgepipe/partition/brute_force.hpp"
#include "edgepipe/partition/dpm.hpp"
#include "edgepipe/partition/plan_io.hpp"
#include "edgepipe/partition/predict.hpp"
#include "edgepipe/runtime/images.hpp"
#include "edgepipe/runtime/local_cluster.hpp"
#include "edgepipe/runtime/logging.hpp"
#include "edgepipe/runtime/requester.hpp"
#include "edgepipe/sim/simulator.hpp"

namespace fs = std::filesystem;
using namespace edgepipe;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string num(double v, const char* pattern = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

cnn::ModelGraph model_or_lenet(const std::string& path) {
  return path.empty() ? cnn::build_lenet().model : cnn::load_model(path);
}

// --- worker ---------------------------------------------------------------

struct WorkerArgs {
  std::string listen = "127.0.0.1:0";
  int threads = 1;
  int timeout_ms = 30'000;
};

int cmd_worker(const WorkerArgs& a) {
  auto listener = runtime::tcp_listen(a.listen);
  auto connector = runtime::tcp_connector();
  std::printf("LISTENING %s\n", listener->address().c_str());
  std::fflush(stdout);
  runtime::WorkerOptions opts;
  opts.kernel_threads = a.threads;
  opts.frame_timeout = runtime::Millis{a.timeout_ms};
  return runtime::serve_worker(*listener, *connector, opts);
}

// --- run ------------------------------------------------------------------

struct RunArgs {
  std::string model, weights, plan, images = "100", workers, stats_out;
  std::uint64_t seed = 1;
  std::size_t window = 0;
  int timeout_ms = 30'000;
  int local_threads = 1;
  bool local = false;
};

int cmd_run(const RunArgs& a) {
  const auto model = model_or_lenet(a.model);
  const auto weights =
      a.weights.empty() ? cnn::Weights::seeded(model, a.seed) : cnn::load_weights(model, a.weights);
  const auto profile = partition::LayerProfile::of(model);
  const auto file_plan = partition::load_plan(a.plan).plan;
  // Only the cuts and cut sizes matter for running; the MAC column may come
  // from a different costing of the same model.
  const auto plan = partition::bind_plan(file_plan, profile, false);
  if (!file_plan.stage_macs.empty() && file_plan.stage_macs != plan.stage_macs) {
    std::fprintf(stderr, "note: plan stage MACs differ from the model's; using the model's\n");
  }

  std::vector<cnn::Tensor> images;
  std::size_t n = 0;
  const auto [end, ec] = std::from_chars(a.images.data(), a.images.data() + a.images.size(), n);
  if (ec == std::errc{} && end == a.images.data() + a.images.size()) {
    images = runtime::synthetic_images(model.input_shape(), n, a.seed);
  } else {
    images = runtime::load_images(a.images, model.input_shape());
  }

  runtime::RequesterOptions opts;
  opts.window = a.window;
  opts.frame_timeout = runtime::Millis{a.timeout_ms};
  auto connector = runtime::tcp_connector();

  std::unique_ptr<runtime::LocalCluster> cluster;
  std::vector<std::string> addresses;
  if (a.local) {
    cluster = std::make_unique<runtime::LocalCluster>(fs::read_symlink("/proc/self/exe").string(),
                                                      plan.stages(), a.local_threads);
    addresses = cluster->addresses();
  } else {
    addresses = split_list(a.workers);
  }
  const auto result =
      runtime::run_requester(model, weights, plan, images, addresses, *connector, opts);
  const auto& st = result.stats;
  std::printf("%zu images, %zu stages: makespan %.3f ms, %.1f images/s\n", st.n_images,
              plan.stages(), st.makespan_seconds * 1e3, st.throughput);
  if (!a.stats_out.empty()) {
    std::vector<std::string> busy, bytes;
    for (double b : st.stage_busy_seconds) busy.push_back(num(b * 1e3));
    for (auto b : st.link_bytes) bytes.push_back(std::to_string(b));
    std::string csv =
        "n_images,stages,makespan_ms,throughput_ips,steady_period_ms,setup_ms,max_latency_ms,"
        "stage_busy_ms,link_bytes\n";
    csv += std::to_string(st.n_images) + "," + std::to_string(plan.stages()) + "," +
           num(st.makespan_seconds * 1e3) + "," + num(st.throughput) + "," +
           num(st.steady_period_seconds * 1e3) + "," + num(st.setup_seconds * 1e3) + "," +
           num(st.max_latency() * 1e3) + "," + join(busy, ';') + "," + join(bytes, ';') + "\n";
    write_text(a.stats_out, csv);
  }
  if (cluster) {
    for (auto code : cluster->wait()) {
      if (code != 0) {
        std::fprintf(stderr, "a worker exited with code %d\n", code);
        return 1;
      }
    }
  }
  return 0;
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string plan, cost_model, images = "100", overlap = "send-overlaps-compute", out;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto file = partition::load_plan(a.plan);
  partition::CostModel cost;
  if (!a.cost_model.empty()) {
    cost = partition::load_cost_model(a.cost_model).for_workers(file.plan.stages());
  } else if (file.cost_model) {
    cost = *file.cost_model;
  } else {
    throw std::invalid_argument("no cost model: pass --cost-model or embed one in the plan");
  }
  const auto mode = partition::overlap_from_string(a.overlap);
  std::string csv =
      "n_images,makespan_ms,time_per_image_ms,throughput_ips,steady_period_ms,"
      "predicted_makespan_ms\n";
  for (auto n : bench::parse_image_counts(a.images)) {
    const auto st = sim::simulate(file.plan, cost, n, mode);
    const auto pred = partition::predict(file.plan, cost, n, mode);
    csv += std::to_string(n) + "," + num(st.makespan_seconds * 1e3) + "," +
           num(n ? st.makespan_seconds * 1e3 / static_cast<double>(n) : 0.0) + "," +
           num(st.throughput) + "," + num(st.steady_period_seconds * 1e3) + "," +
           num(pred.makespan * 1e3) + "\n";
  }
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
  }
  return 0;
}

// --- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string scenario = "all", images = "100", mode = "simulate", cost_model, out = "bench-out";
  std::string overlap = "send-overlaps-compute";
  std::uint64_t seed = 1;
  int threads = 1;
};

int cmd_bench(const BenchArgs& a) {
  const auto scenarios = bench::select_scenarios(a.scenario);
  const auto counts = bench::parse_image_counts(a.images);
  std::vector<bench::BenchRow> rows;
  if (a.mode == "simulate") {
    if (a.cost_model.empty()) {
      throw std::invalid_argument("simulate mode needs --cost-model (see `edgepipe calibrate`)");
    }
    rows = bench::bench_simulate(scenarios, counts, partition::load_cost_model(a.cost_model),
                                 partition::overlap_from_string(a.overlap));
  } else if (a.mode == "local-processes") {
    auto lenet = cnn::build_lenet();
    bench::LocalSetup setup{fs::read_symlink("/proc/self/exe"), lenet.model,
                            cnn::Weights::seeded(lenet.model, a.seed), a.seed, a.threads, {}};
    rows = bench::bench_local(scenarios, counts, setup);
  } else {
    throw std::invalid_argument("unknown mode \"" + a.mode + "\"");
  }
  const auto path = fs::path(a.out) / ("bench_" + a.mode + ".csv");
  write_text(path, bench::rows_to_csv(rows));
  std::printf("%zu rows -> %s\n", rows.size(), path.c_str());
  return 0;
}

// --- partition ------------------------------------------------------------

struct PartitionArgs {
  std::string model, cost_model, out;
  std::size_t workers = 2;
  std::uint64_t capacity = 1'000'000;
  bool reference_macs = false;
  bool brute_force = false;
};

int cmd_partition(const PartitionArgs& a) {
  const auto model = model_or_lenet(a.model);
  const auto profile = a.reference_macs ? partition::LayerProfile::lenet_reference()
                                        : partition::LayerProfile::of(model);
  partition::CostModel cost;
  if (!a.cost_model.empty()) cost = partition::load_cost_model(a.cost_model).for_workers(a.workers);
  const auto plan =
      a.brute_force ? partition::brute_force_partition(profile, a.workers, a.capacity, cost)
                    : partition::dpm_partition({profile, a.workers, a.capacity, cost});
  std::printf("%s\n", partition::describe(plan).c_str());
  if (!a.out.empty()) {
    partition::save_plan({model.name(), plan, a.cost_model.empty() ? std::nullopt
                                                                   : std::optional(cost)},
                         a.out);
  }
  return plan.feasible() ? 0 : 3;
}

// --- calibrate / lenet / report ---------------------------------------------

int cmd_calibrate(const std::string& out, const std::string& overlap) {
  const auto set = bench::calibrate_table(partition::LayerProfile::lenet_reference(),
                                          partition::overlap_from_string(overlap));
  const auto json = partition::cost_model_to_json(set);
  if (out.empty()) {
    std::cout << json;
  } else {
    write_text(out, json);
  }
  return 0;
}

int cmd_lenet(const std::string& out, const std::string& weights_out, std::uint64_t seed) {
  const auto lenet = cnn::build_lenet();
  if (out.empty()) {
    std::cout << cnn::model_to_json(lenet.model);
  } else {
    cnn::save_model(lenet.model, out);
  }
  if (!weights_out.empty()) cnn::save_weights(cnn::Weights::seeded(lenet.model, seed), weights_out);
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<bench::BenchRow> rows;
  for (const auto& f : inputs) {
    auto r = bench::read_csv(f);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const auto report = bench::make_report(rows);
  if (out.empty()) {
    std::cout << report.summary;
  } else {
    bench::write_report(report, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  runtime::init_logging();
  CLI::App app{"edgepipe: pipelined CNN inference across edge workers"};
  app.require_subcommand(1);

  WorkerArgs worker;
  auto* w = app.add_subcommand("worker", "serve one pipeline stage, then exit");
  w->add_option("--listen", worker.listen, "host:port (port 0 picks one)");
  w->add_option("--threads", worker.threads, "kernel threads");
  w->add_option("--timeout-ms", worker.timeout_ms, "per-frame timeout");

  RunArgs run;
  auto* r = app.add_subcommand("run", "stream images through running workers");
  r->add_option("--model", run.model, "model JSON (default: LeNet)");
  r->add_option("--weights", run.weights, "weights file (default: seeded)");
  r->add_option("--plan", run.plan, "plan JSON")->required();
  r->add_option("--images", run.images, "image count (synthetic) or directory");
  r->add_option("--workers", run.workers, "comma-separated worker addresses, one per stage");
  r->add_flag("--local", run.local, "spawn local worker processes instead");
  r->add_option("--local-threads", run.local_threads, "kernel threads of spawned workers");
  r->add_option("--stats-out", run.stats_out, "stats CSV");
  r->add_option("--seed", run.seed, "seed for weights and synthetic images");
  r->add_option("--window", run.window, "images in flight (default 2 x stages)");
  r->add_option("--timeout-ms", run.timeout_ms, "per-frame timeout");

  SimulateArgs simulate;
  auto* s = app.add_subcommand("simulate", "discrete-event simulation of a plan");
  s->add_option("--plan", simulate.plan, "plan JSON")->required();
  s->add_option("--cost-model", simulate.cost_model, "cost model JSON");
  s->add_option("--images", simulate.images, "count list, or short/long/sweep");
  s->add_option("--overlap", simulate.overlap, "send-overlaps-compute | send-blocks-compute");
  s->add_option("--out", simulate.out, "CSV (default stdout)");

  BenchArgs bench_args;
  auto* b = app.add_subcommand("bench", "run catalog scenarios and write CSV");
  b->add_option("--scenario", bench_args.scenario, "id list or all");
  b->add_option("--images", bench_args.images, "count list, or short/long/sweep");
  b->add_option("--mode", bench_args.mode, "simulate | local-processes");
  b->add_option("--cost-model", bench_args.cost_model, "cost model JSON (simulate mode)");
  b->add_option("--overlap", bench_args.overlap, "overlap mode (simulate mode)");
  b->add_option("--out", bench_args.out, "output directory");
  b->add_option("--seed", bench_args.seed, "seed (local-processes mode)");
  b->add_option("--threads", bench_args.threads, "worker kernel threads");

  PartitionArgs part;
  auto* p = app.add_subcommand("partition", "choose cuts for a model");
  p->add_option("--model", part.model, "model JSON (default: LeNet)");
  p->add_option("--workers", part.workers, "stage count");
  p->add_option("--capacity", part.capacity, "largest cut, in elements");
  p->add_option("--cost-model", part.cost_model, "cost model JSON");
  p->add_flag("--reference-macs", part.reference_macs, "LeNet MACs as tabulated");
  p->add_flag("--brute-force", part.brute_force, "exhaustive search");
  p->add_option("--out", part.out, "plan JSON");

  std::string cal_out, cal_overlap = "send-overlaps-compute";
  auto* c = app.add_subcommand("calibrate", "cost model fitted to the LeNet testbed numbers");
  c->add_option("--out", cal_out, "cost model JSON (default stdout)");
  c->add_option("--overlap", cal_overlap, "overlap mode used for fitting");

  std::string lenet_out, lenet_weights;
  std::uint64_t lenet_seed = 1;
  auto* l = app.add_subcommand("lenet", "write the LeNet model (and seeded weights)");
  l->add_option("--out", lenet_out, "model JSON (default stdout)");
  l->add_option("--weights-out", lenet_weights, "weights file");
  l->add_option("--seed", lenet_seed, "weights seed");

  std::vector<std::string> report_in;
  std::string report_out;
  auto* rep = app.add_subcommand("report", "summarize bench CSVs");
  rep->add_option("csv", report_in, "bench CSV files");
  rep->add_option("--out", report_out, "output directory (default: summary to stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*w) return cmd_worker(worker);
    if (*r) return cmd_run(run);
    if (*s) return cmd_simulate(simulate);
    if (*b) return cmd_bench(bench_args);
    if (*p) return cmd_partition(part);
    if (*c) return cmd_calibrate(cal_out, cal_overlap);
    if (*l) return cmd_lenet(lenet_out, lenet_weights, lenet_seed);
    if (*rep) return cmd_report(report_in, report_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "edgepipe: %s\n", e.what());
    return 1;
  }
  return 0;
}
