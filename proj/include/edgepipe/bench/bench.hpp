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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/bench/scenarios.hpp"
#include "edgepipe/cnn/model.hpp"
#include "edgepipe/cnn/weights.hpp"
#include "edgepipe/partition/cost_model.hpp"
#include "edgepipe/runtime/requester.hpp"

namespace edgepipe::bench {

/// One CSV row. Columns, in order:
///   mode               "simulate" or "local-processes"
///   scenario           catalog id
///   workers            stage count
///   n_images           batch size
///   makespan_ms        first injection to last result
///   time_per_image_ms  makespan_ms / n_images
///   throughput_ratio   makespan of I.1 / makespan of this case, same n
///                      and mode (1.0 for I.1)
struct BenchRow {
  std::string mode;
  std::string scenario;
  std::size_t workers = 0;
  std::size_t n_images = 0;
  double makespan_ms = 0.0;
  double time_per_image_ms = 0.0;
  double throughput_ratio = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "mode,scenario,workers,n_images,makespan_ms,time_per_image_ms,throughput_ratio";

/// 100, 200, ..., 1000 and 1000, 2000, ..., 10000.
std::vector<std::size_t> short_sweep();
std::vector<std::size_t> long_sweep();

/// Parses "100,200" or "short"/"long"/"sweep" (both ranges).
std::vector<std::size_t> parse_image_counts(std::string_view spec);

/// Rows for every scenario x image count (n = 0 produces no row). The
/// baseline I.1 is evaluated even if not requested.
std::vector<BenchRow> bench_simulate(std::span<const Scenario> scenarios,
                                     std::span<const std::size_t> image_counts,
                                     const partition::CostModelSet& costs,
                                     partition::OverlapMode mode =
                                         partition::OverlapMode::kSendOverlapsCompute);

struct LocalSetup {
  std::filesystem::path worker_exe;
  cnn::ModelGraph model;
  cnn::Weights weights;
  std::uint64_t image_seed = 1;
  int kernel_threads = 1;
  runtime::RequesterOptions requester;
};

/// Runs each scenario on fresh worker processes. Failures are rethrown as
/// Error naming the scenario.
std::vector<BenchRow> bench_local(std::span<const Scenario> scenarios,
                                  std::span<const std::size_t> image_counts,
                                  const LocalSetup& setup);

std::string rows_to_csv(std::span<const BenchRow> rows);

}  // namespace edgepipe::bench
