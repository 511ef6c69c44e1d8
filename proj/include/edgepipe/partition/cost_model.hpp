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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace edgepipe::partition {

/// Linear cost model: compute time proportional to MACs, per-message channel
/// time = latency + elements * seconds_per_element. All values in seconds.
struct CostModel {
  double time_per_mac = 1e-9;
  double channel_latency = 0.0;
  double channel_seconds_per_element = 0.0;

  /// Throws std::invalid_argument on negative values or time_per_mac <= 0.
  void validate() const;

  static CostModel compute_only(double time_per_mac) { return {time_per_mac, 0.0, 0.0}; }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

inline double compute_seconds(std::uint64_t macs, const CostModel& c) noexcept {
  return static_cast<double>(macs) * c.time_per_mac;
}

inline double comm_seconds(std::uint64_t elements, const CostModel& c) noexcept {
  return c.channel_latency + static_cast<double>(elements) * c.channel_seconds_per_element;
}

/// How a stage's outgoing transfer relates to its compute.
///  - kSendBlocksCompute: the stage is occupied until its output is delivered,
///    so its per-image time is compute + outgoing communication.
///  - kSendOverlapsCompute: the link is a separate resource; the stage starts
///    the next image as soon as compute finishes.
enum class OverlapMode { kSendOverlapsCompute, kSendBlocksCompute };

std::string to_string(OverlapMode mode);
OverlapMode overlap_from_string(const std::string& s);

/// A base cost model plus optional per-worker-count time_per_mac overrides.
/// Measured pipelines rarely scale per-MAC cost exactly with stage size, so
/// calibrations fitted per worker count are stored this way.
struct CostModelSet {
  CostModel base;
  std::map<std::size_t, double> time_per_mac_by_workers;

  CostModel for_workers(std::size_t workers) const;
};

std::string cost_model_to_json(const CostModelSet& set);
/// Accepts {"time_per_mac", "channel_latency", "channel_seconds_per_element",
/// optional "time_per_mac_by_workers": {"2": ..., ...}}.
CostModelSet cost_model_from_json(const std::string& text);
CostModelSet load_cost_model(const std::filesystem::path& path);
void save_cost_model(const CostModelSet& set, const std::filesystem::path& path);

}  // namespace edgepipe::partition
