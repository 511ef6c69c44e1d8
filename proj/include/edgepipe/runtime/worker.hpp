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

#include "edgepipe/runtime/assignment.hpp"
#include "edgepipe/runtime/transport.hpp"

namespace edgepipe::runtime {

struct WorkerOptions {
  Millis frame_timeout = kDefaultFrameTimeout;
  Millis accept_timeout{120'000};
  int kernel_threads = 1;
};

/// What a worker reports back (DONE payload: three u64 LE, in this order).
struct StageReport {
  std::uint64_t images = 0;
  std::uint64_t busy_ns = 0;          // time spent inside forward passes
  std::uint64_t data_bytes_sent = 0;  // TENSOR/RESULT bytes sent downstream

  friend bool operator==(const StageReport&, const StageReport&) = default;
};

Frame report_frame(const StageReport& report);
/// Throws ParseError unless `frame` is a DONE carrying a report.
StageReport decode_report(const Frame& frame);

/// A stage that could not continue. The ERROR frame describing it has
/// already been sent.
class StageFailure : public Error {
 public:
  using Error::Error;
};

/// The receive -> forward -> send loop of one stage. Returns after DONE has
/// been received (and forwarded, unless this is the last stage). On bad
/// input an ERROR frame goes to `control` and downstream, then StageFailure
/// is thrown. `control` may alias `input` or `output`.
StageReport run_stage(const StageAssignment& assignment, Transport& input, Transport& output,
                      Transport& control, const WorkerOptions& options = {});

/// One pipeline session on an accepted requester connection whose HELLO has
/// been consumed: ASSIGN, wiring to the neighbours, "ready", the stage loop
/// and the final report.
StageReport serve_session(Transport& control, Listener& listener, Connector& connector,
                          const WorkerOptions& options = {});

/// Accepts one requester and serves its session. Returns the process exit
/// code: 0 after a clean DONE, 1 on a stage failure, 2 on channel failure.
int serve_worker(Listener& listener, Connector& connector, const WorkerOptions& options = {});

}  // namespace edgepipe::runtime
