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
#include <string>
#include <sys/types.h>
#include <vector>

#include "edgepipe/runtime/transport.hpp"

namespace edgepipe::runtime {

/// Worker processes on this host: each is `<exe> worker --listen
/// 127.0.0.1:0 --threads <n>` and announces its port on stdout.
class LocalCluster {
 public:
  LocalCluster(const std::filesystem::path& exe, std::size_t workers, int kernel_threads = 1,
               Millis startup_timeout = Millis{10'000});
  ~LocalCluster();
  LocalCluster(const LocalCluster&) = delete;
  LocalCluster& operator=(const LocalCluster&) = delete;

  const std::vector<std::string>& addresses() const noexcept { return addresses_; }

  /// Waits for every worker to exit and returns the exit codes; workers still
  /// alive at the deadline are killed and reported as -1.
  std::vector<int> wait(Millis timeout = Millis{10'000});

 private:
  struct Child {
    pid_t pid = -1;
    int out_fd = -1;
  };
  std::vector<Child> children_;
  std::vector<std::string> addresses_;
};

}  // namespace edgepipe::runtime
