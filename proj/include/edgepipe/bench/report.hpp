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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/bench/bench.hpp"

namespace edgepipe::bench {

/// Throws ParseError (with the 1-based line number) on a bad header, wrong
/// field count or unparsable number.
std::vector<BenchRow> parse_csv(const std::string& text);
std::vector<BenchRow> read_csv(const std::filesystem::path& path);

struct Report {
  /// Markdown: per mode, best case per worker count at 100 images (or the
  /// smallest batch present) with throughput percentage and time.
  std::string summary;
  /// File name -> CSV: per mode, best makespan per worker count against
  /// n_images ("n_images,workers_1_ms,workers_2_ms,workers_3_ms").
  std::map<std::string, std::string> series;
};

Report make_report(std::span<const BenchRow> rows);

/// Writes summary.md and the series files into `dir`.
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace edgepipe::bench
