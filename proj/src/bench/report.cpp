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

#include "edgepipe/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "edgepipe/errors.hpp"

namespace edgepipe::bench {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, const char* column, std::size_t line) {
  std::istringstream in(s);
  T v{};
  in >> v;
  if (s.empty() || in.fail() || !in.eof()) {
    throw ParseError("line " + std::to_string(line) + ": bad " + column + " \"" + s + "\"",
                     line);
  }
  return v;
}

const char* kNumerals[] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"};

std::string numeral(std::size_t n) {
  return n < std::size(kNumerals) ? kNumerals[n] : std::to_string(n);
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<BenchRow> rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header \"" +
                             std::string(kCsvHeader) + "\"",
                         line_no);
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 7) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                           std::to_string(f.size()),
                       line_no);
    }
    BenchRow r;
    r.mode = f[0];
    r.scenario = f[1];
    if (r.mode.empty() || r.scenario.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty mode or scenario", line_no);
    }
    r.workers = parse_number<std::size_t>(f[2], "workers", line_no);
    r.n_images = parse_number<std::size_t>(f[3], "n_images", line_no);
    r.makespan_ms = parse_number<double>(f[4], "makespan_ms", line_no);
    r.time_per_image_ms = parse_number<double>(f[5], "time_per_image_ms", line_no);
    r.throughput_ratio = parse_number<double>(f[6], "throughput_ratio", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<BenchRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_csv(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

Report make_report(std::span<const BenchRow> rows) {
  Report report;
  std::set<std::string> modes;
  for (const auto& r : rows) modes.insert(r.mode);

  for (const auto& mode : modes) {
    std::set<std::size_t> counts;
    std::set<std::size_t> workers;
    for (const auto& r : rows) {
      if (r.mode == mode) {
        counts.insert(r.n_images);
        workers.insert(r.workers);
      }
    }
    // Best (lowest makespan) row per (workers, n); ties keep the first id.
    auto best = [&](std::size_t w, std::size_t n) -> const BenchRow* {
      const BenchRow* b = nullptr;
      for (const auto& r : rows) {
        if (r.mode != mode || r.workers != w || r.n_images != n) continue;
        if (!b || r.makespan_ms < b->makespan_ms ||
            (r.makespan_ms == b->makespan_ms && r.scenario < b->scenario)) {
          b = &r;
        }
      }
      return b;
    };

    const std::size_t ref_n = counts.contains(100) ? 100 : *counts.begin();
    auto& s = report.summary;
    s += "## " + mode + ", " + std::to_string(ref_n) + " images\n\n";
    s += "| Case | # worker | Best scenario | Throughput | Time (ms) |\n";
    s += "|------|----------|---------------|------------|-----------|\n";
    for (auto w : workers) {
      const auto* b = best(w, ref_n);
      if (!b) continue;
      s += "| " + numeral(w) + " | " + std::to_string(w) + " | " + b->scenario + " | " +
           fmt("%.0f%%", b->throughput_ratio * 100.0) + " | " + fmt("%.3f", b->makespan_ms) +
           " |\n";
    }
    s += "\n";

    std::string csv = "n_images";
    for (auto w : workers) csv += ",workers_" + std::to_string(w) + "_ms";
    csv += "\n";
    for (auto n : counts) {
      csv += std::to_string(n);
      for (auto w : workers) {
        const auto* b = best(w, n);
        csv += ",";
        if (b) csv += fmt("%.6f", b->makespan_ms);
      }
      csv += "\n";
    }
    report.series["series_" + mode + ".csv"] = std::move(csv);
  }
  return report;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + (dir / name).string());
  };
  write("summary.md", report.summary);
  for (const auto& [name, text] : report.series) write(name, text);
}

}  // namespace edgepipe::bench
