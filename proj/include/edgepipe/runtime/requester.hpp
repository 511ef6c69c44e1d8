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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/cnn/model.hpp"
#include "edgepipe/cnn/tensor.hpp"
#include "edgepipe/cnn/weights.hpp"
#include "edgepipe/partition/plan.hpp"
#include "edgepipe/runtime/transport.hpp"
#include "edgepipe/runtime/worker.hpp"
#include "edgepipe/stats.hpp"

namespace edgepipe::runtime {

struct RequesterOptions {
  /// Images in flight at once; 0 means 2 * number of stages.
  std::size_t window = 0;
  Millis frame_timeout = kDefaultFrameTimeout;
};

struct RunResult {
  std::vector<cnn::Tensor> outputs;  // in image order
  PipelineStats stats;
  std::vector<StageReport> stage_reports;
};

/// Failure of a distributed run; names the stage when one is to blame.
class PipelineError : public Error {
 public:
  PipelineError(const std::string& what, std::optional<std::size_t> stage)
      : Error(what), stage_(stage) {}
  std::optional<std::size_t> stage() const noexcept { return stage_; }

 private:
  std::optional<std::size_t> stage_;
};

/// Streams `images` through workers running `plan`. worker_addresses[i]
/// hosts stage i. Throws InfeasiblePlan for an infeasible plan, ShapeError
/// for images that do not fit the model, PipelineError for anything that
/// goes wrong on the way.
RunResult run_requester(const cnn::ModelGraph& model, const cnn::Weights& weights,
                        const partition::PartitionPlan& plan, std::span<const cnn::Tensor> images,
                        std::span<const std::string> worker_addresses, Connector& connector,
                        const RequesterOptions& options = {});

}  // namespace edgepipe::runtime
