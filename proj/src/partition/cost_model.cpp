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

#include "edgepipe/partition/cost_model.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgepipe/errors.hpp"
#include "json.hpp"

namespace edgepipe::partition {

void CostModel::validate() const {
  if (!(time_per_mac > 0.0)) throw std::invalid_argument("time_per_mac must be > 0");
  if (channel_latency < 0.0) throw std::invalid_argument("channel_latency must be >= 0");
  if (channel_seconds_per_element < 0.0) {
    throw std::invalid_argument("channel_seconds_per_element must be >= 0");
  }
}

std::string to_string(OverlapMode mode) {
  return mode == OverlapMode::kSendOverlapsCompute ? "send-overlaps-compute"
                                                   : "send-blocks-compute";
}

OverlapMode overlap_from_string(const std::string& s) {
  if (s == "send-overlaps-compute") return OverlapMode::kSendOverlapsCompute;
  if (s == "send-blocks-compute") return OverlapMode::kSendBlocksCompute;
  throw std::invalid_argument("unknown overlap mode '" + s +
                              "' (send-overlaps-compute | send-blocks-compute)");
}

CostModel CostModelSet::for_workers(std::size_t workers) const {
  CostModel c = base;
  if (auto it = time_per_mac_by_workers.find(workers); it != time_per_mac_by_workers.end()) {
    c.time_per_mac = it->second;
  }
  return c;
}

std::string cost_model_to_json(const CostModelSet& set) {
  nlohmann::ordered_json j;
  j["time_per_mac"] = set.base.time_per_mac;
  j["channel_latency"] = set.base.channel_latency;
  j["channel_seconds_per_element"] = set.base.channel_seconds_per_element;
  if (!set.time_per_mac_by_workers.empty()) {
    nlohmann::ordered_json by = nlohmann::ordered_json::object();
    for (const auto& [w, t] : set.time_per_mac_by_workers) by[std::to_string(w)] = t;
    j["time_per_mac_by_workers"] = std::move(by);
  }
  return j.dump(2) + "\n";
}

CostModelSet cost_model_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CostModelSet set;
    set.base.time_per_mac = j.at("time_per_mac").get<double>();
    set.base.channel_latency = j.value("channel_latency", 0.0);
    set.base.channel_seconds_per_element = j.value("channel_seconds_per_element", 0.0);
    if (j.contains("time_per_mac_by_workers")) {
      for (const auto& [k, v] : j.at("time_per_mac_by_workers").items()) {
        set.time_per_mac_by_workers[std::stoul(k)] = v.get<double>();
      }
    }
    set.base.validate();
    for (const auto& [w, t] : set.time_per_mac_by_workers) set.for_workers(w).validate();
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed cost model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid cost model: ") + e.what());
  }
}

CostModelSet load_cost_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cost model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return cost_model_from_json(ss.str());
}

void save_cost_model(const CostModelSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write cost model " + path.string());
  out << cost_model_to_json(set);
}

}  // namespace edgepipe::partition
