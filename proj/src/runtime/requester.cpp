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

#include "edgepipe/runtime/requester.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <semaphore>
#include <thread>

#include "edgepipe/runtime/assignment.hpp"

namespace edgepipe::runtime {
namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

std::string stage_name(std::size_t i) { return "stage " + std::to_string(i); }

// Receives on a stage's control connection, turning ERROR frames and channel
// failures into PipelineError.
Frame recv_from(Transport& t, std::size_t stage, Millis timeout) {
  Frame f;
  try {
    f = t.recv_frame(timeout);
  } catch (const TransportError& e) {
    throw PipelineError(stage_name(stage) + ": " + e.what(), stage);
  }
  if (f.type == MessageType::kError) throw PipelineError(f.text(), stage);
  return f;
}

}  // namespace

RunResult run_requester(const cnn::ModelGraph& model, const cnn::Weights& weights,
                        const partition::PartitionPlan& plan, std::span<const cnn::Tensor> images,
                        std::span<const std::string> worker_addresses, Connector& connector,
                        const RequesterOptions& options) {
  if (plan.feasibility == partition::Feasibility::kInfeasible) {
    throw InfeasiblePlan("refusing to run an infeasible plan: " + partition::describe(plan));
  }
  const auto& in_shape = model.input_shape();
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (images[k].size() != in_shape.elements()) {
      throw ShapeError("image " + std::to_string(k) + " has shape " +
                       images[k].shape().to_string() + ", model expects " + in_shape.to_string());
    }
  }
  const auto assignments = make_assignments(model, weights, plan, worker_addresses);
  const std::size_t stages = assignments.size();
  const std::size_t last = stages - 1;
  const auto timeout = options.frame_timeout;

  const auto t_setup = Clock::now();
  std::vector<std::unique_ptr<Transport>> control(stages);
  for (std::size_t i = 0; i < stages; ++i) {
    try {
      control[i] = connector.connect(worker_addresses[i]);
      control[i]->send_frame(Frame::hello("requester"));
    } catch (const TransportError& e) {
      throw PipelineError(stage_name(i) + ": cannot reach worker at " + worker_addresses[i] +
                              ": " + e.what(),
                          i);
    }
  }
  for (std::size_t i = 0; i < stages; ++i) {
    try {
      control[i]->send_frame(encode_assignment(assignments[i]));
    } catch (const TransportError& e) {
      throw PipelineError(stage_name(i) + ": " + e.what(), i);
    }
  }
  for (std::size_t i = 0; i < stages; ++i) {
    Frame f = recv_from(*control[i], i, timeout);
    if (f.type != MessageType::kHello || f.text() != "ready") {
      throw PipelineError(stage_name(i) + ": expected ready, got " +
                              std::string(to_string(f.type)),
                          i);
    }
  }
  const double setup_seconds = seconds(Clock::now() - t_setup);
  spdlog::info("pipeline of {} stages ready in {:.3f} ms", stages, setup_seconds * 1e3);

  const std::size_t n = images.size();
  const std::size_t window = options.window ? options.window : 2 * stages;
  std::counting_semaphore<> slots(static_cast<std::ptrdiff_t>(window));
  std::atomic<bool> abort{false};
  std::mutex mu;  // guards injected
  std::vector<Clock::time_point> injected(n);
  std::exception_ptr sender_error;

  Transport& head = *control[0];
  Transport& tail = *control[last];

  std::thread sender([&] {
    try {
      for (std::size_t k = 0; k < n; ++k) {
        while (!slots.try_acquire_for(std::chrono::milliseconds(50))) {
          if (abort.load()) return;
        }
        if (abort.load()) return;
        Frame f = Frame::tensor(static_cast<std::uint32_t>(k), images[k].reshaped(in_shape));
        {
          std::lock_guard lock(mu);
          injected[k] = Clock::now();
        }
        head.send_frame(f);
      }
      head.send_frame(Frame::done());
    } catch (...) {
      sender_error = std::current_exception();
      abort.store(true);
      tail.close();  // wake the receiver
    }
  });

  RunResult result;
  result.outputs.reserve(n);
  std::vector<Clock::time_point> received;
  received.reserve(n);
  try {
    for (std::size_t k = 0; k < n; ++k) {
      Frame f = recv_from(tail, last, timeout);
      if (f.type != MessageType::kResult) {
        throw PipelineError(stage_name(last) + ": expected RESULT, got " +
                                std::string(to_string(f.type)),
                            last);
      }
      if (f.image_id != k) {
        throw PipelineError(stage_name(last) + ": result for image " +
                                std::to_string(f.image_id) + " arrived, expected " +
                                std::to_string(k),
                            last);
      }
      received.push_back(Clock::now());
      result.outputs.push_back(f.to_tensor());
      slots.release();
    }
    result.stage_reports.resize(stages);
    for (std::size_t i = 0; i < stages; ++i) {
      Frame f = recv_from(*control[i], i, timeout);
      try {
        result.stage_reports[i] = decode_report(f);
      } catch (const ParseError& e) {
        throw PipelineError(stage_name(i) + ": " + e.what(), i);
      }
    }
  } catch (...) {
    abort.store(true);
    for (auto& c : control) c->close();
    sender.join();
    if (sender_error) {
      try {
        std::rethrow_exception(sender_error);
      } catch (const TransportError& e) {
        throw PipelineError(stage_name(0) + ": " + e.what(), 0);
      }
    }
    throw;
  }
  sender.join();
  if (sender_error) std::rethrow_exception(sender_error);

  auto& st = result.stats;
  st.n_images = n;
  st.setup_seconds = setup_seconds;
  st.latency_seconds.resize(n);
  {
    std::lock_guard lock(mu);
    for (std::size_t k = 0; k < n; ++k) st.latency_seconds[k] = seconds(received[k] - injected[k]);
    if (n > 0) st.makespan_seconds = seconds(received.back() - injected.front());
  }
  st.throughput = st.makespan_seconds > 0 ? static_cast<double>(n) / st.makespan_seconds : 0.0;
  if (n >= 2) st.steady_period_seconds = seconds(received[n - 1] - received[n - 2]);
  st.link_bytes.push_back(head.data_bytes_sent());
  for (const auto& r : result.stage_reports) {
    st.stage_busy_seconds.push_back(static_cast<double>(r.busy_ns) * 1e-9);
    st.link_bytes.push_back(r.data_bytes_sent);
  }
  return result;
}

}  // namespace edgepipe::runtime
