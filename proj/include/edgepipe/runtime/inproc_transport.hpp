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

#include <chrono>
#include <memory>
#include <utility>

#include "edgepipe/runtime/transport.hpp"

namespace edgepipe::runtime {

/// Timing of a simulated link. A frame becomes visible to the receiver
/// latency + per_element * (payload bytes / 4) after it is sent; frames on
/// one direction of a link are serialized, so a frame never becomes visible
/// before the one sent ahead of it has finished.
struct LinkModel {
  std::chrono::nanoseconds latency{0};
  std::chrono::nanoseconds per_element{0};
};

/// Connected pair of in-process transports.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> inproc_pair(LinkModel link = {});

/// Named in-process endpoints ("inproc:<n>") so the worker and requester code
/// run unchanged inside one process. Copies share the same network.
class InProcNetwork {
 public:
  explicit InProcNetwork(LinkModel link = {});

  std::unique_ptr<Listener> listen();
  std::unique_ptr<Connector> connector();

  struct State;  // shared by the network's listeners and connectors

 private:
  std::shared_ptr<State> state_;
};

}  // namespace edgepipe::runtime
