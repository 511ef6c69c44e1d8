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

#include "edgepipe/runtime/local_cluster.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

extern char** environ;

namespace edgepipe::runtime {
namespace {

using Clock = std::chrono::steady_clock;

// Reads one '\n'-terminated line from fd, or throws on EOF/timeout.
std::string read_line(int fd, Clock::time_point deadline) {
  std::string line;
  for (;;) {
    const auto left = std::chrono::duration_cast<Millis>(deadline - Clock::now()).count();
    pollfd pfd{fd, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, left > 0 ? static_cast<int>(left) : 0);
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) throw Error("worker did not announce its address in time");
    char c;
    const ssize_t n = ::read(fd, &c, 1);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error("worker exited before announcing its address");
    if (c == '\n') return line;
    line.push_back(c);
  }
}

}  // namespace

LocalCluster::LocalCluster(const std::filesystem::path& exe, std::size_t workers,
                           int kernel_threads, Millis startup_timeout) {
  const std::string exe_s = exe.string();
  const std::string threads = std::to_string(kernel_threads);
  try {
    for (std::size_t i = 0; i < workers; ++i) {
      int fds[2];
      if (::pipe(fds) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
      posix_spawn_file_actions_t actions;
      posix_spawn_file_actions_init(&actions);
      posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
      posix_spawn_file_actions_addclose(&actions, fds[0]);
      posix_spawn_file_actions_addclose(&actions, fds[1]);
      std::vector<std::string> args = {exe_s, "worker", "--listen", "127.0.0.1:0", "--threads",
                                       threads};
      std::vector<char*> argv;
      for (auto& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      pid_t pid = -1;
      const int rc = posix_spawn(&pid, exe_s.c_str(), &actions, nullptr, argv.data(), environ);
      posix_spawn_file_actions_destroy(&actions);
      ::close(fds[1]);
      if (rc != 0) {
        ::close(fds[0]);
        throw Error("cannot start " + exe_s + ": " + std::strerror(rc));
      }
      children_.push_back({pid, fds[0]});
    }
    const auto deadline = Clock::now() + startup_timeout;
    for (auto& c : children_) {
      const auto line = read_line(c.out_fd, deadline);
      constexpr std::string_view kPrefix = "LISTENING ";
      if (!line.starts_with(kPrefix)) throw Error("unexpected worker output: " + line);
      addresses_.push_back(line.substr(kPrefix.size()));
    }
  } catch (...) {
    wait(Millis{0});
    throw;
  }
}

LocalCluster::~LocalCluster() { wait(Millis{2'000}); }

std::vector<int> LocalCluster::wait(Millis timeout) {
  const auto deadline = Clock::now() + timeout;
  std::vector<int> codes;
  for (auto& c : children_) {
    int code = -1;
    if (c.pid > 0) {
      for (;;) {
        int status = 0;
        const pid_t r = ::waitpid(c.pid, &status, WNOHANG);
        if (r == c.pid) {
          code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
          break;
        }
        if (r < 0 && errno != EINTR) break;
        if (Clock::now() >= deadline) {
          ::kill(c.pid, SIGKILL);
          ::waitpid(c.pid, &status, 0);
          break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
      c.pid = -1;
    }
    if (c.out_fd >= 0) {
      ::close(c.out_fd);
      c.out_fd = -1;
    }
    codes.push_back(code);
  }
  return codes;
}

}  // namespace edgepipe::runtime
