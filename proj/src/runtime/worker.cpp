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

#include "edgepipe/runtime/worker.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <optional>

#include "edgepipe/bytes.hpp"
#include "edgepipe/cnn/forward.hpp"
#include "edgepipe/cnn/kernels.hpp"
#include "edgepipe/cnn/model_io.hpp"

namespace edgepipe::runtime {
namespace {

using Clock = std::chrono::steady_clock;

std::string stage_label(const StageAssignment& a) {
  return "stage " + std::to_string(a.stage_index);
}

// Best effort: the peer may already be gone.
void try_send(Transport& t, const Frame& f) noexcept {
  try {
    t.send_frame(f);
  } catch (const std::exception& e) {
    spdlog::debug("could not deliver {}: {}", to_string(f.type), e.what());
  }
}

[[noreturn]] void fail(const std::string& text, Transport& control, Transport* downstream) {
  spdlog::error("{}", text);
  const auto err = Frame::error(text);
  try_send(control, err);
  if (downstream && downstream != &control) try_send(*downstream, err);
  throw StageFailure(text);
}

Frame expect_hello(Transport& t, std::string_view role, Millis timeout) {
  Frame f = t.recv_frame(timeout);
  if (f.type != MessageType::kHello || f.text() != role) {
    throw TransportError(TransportError::Kind::kProtocol,
                         "expected HELLO \"" + std::string(role) + "\", got " +
                             std::string(to_string(f.type)) + " \"" + f.text() + "\"");
  }
  return f;
}

}  // namespace

Frame report_frame(const StageReport& report) {
  Frame f = Frame::done();
  bytes::put_u64(f.payload, report.images);
  bytes::put_u64(f.payload, report.busy_ns);
  bytes::put_u64(f.payload, report.data_bytes_sent);
  return f;
}

StageReport decode_report(const Frame& frame) {
  if (frame.type != MessageType::kDone || frame.payload.size() != 24) {
    throw ParseError("expected DONE with a 24-byte stage report, got " +
                     std::string(to_string(frame.type)) + " with " +
                     std::to_string(frame.payload.size()) + " payload bytes");
  }
  bytes::Reader r(frame.payload);
  StageReport s;
  s.images = r.u64();
  s.busy_ns = r.u64();
  s.data_bytes_sent = r.u64();
  return s;
}

StageReport run_stage(const StageAssignment& a, Transport& input, Transport& output,
                      Transport& control, const WorkerOptions& options) {
  const auto label = stage_label(a);
  std::optional<cnn::ModelGraph> model;
  try {
    model = cnn::model_from_json(a.model_json);
    cnn::check_range(*model, a.range);
    if (a.blocks.size() != a.range.size()) {
      throw ShapeError("assignment has " + std::to_string(a.blocks.size()) +
                       " weight blocks for " + std::to_string(a.range.size()) + " layers");
    }
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
      a.blocks[i].check_matches(model->layer(a.range.begin + i));
    }
    if (model->shape_before(a.range.begin) != a.input_shape) {
      throw ShapeError("assignment input shape " + a.input_shape.to_string() +
                       " does not match the model (" +
                       model->shape_before(a.range.begin).to_string() + ")");
    }
  } catch (const Error& e) {
    fail(label + ": bad assignment: " + e.what(), control, a.last() ? nullptr : &output);
  } catch (const std::exception& e) {
    fail(label + ": bad assignment: " + e.what(), control, a.last() ? nullptr : &output);
  }

  const auto out_type = a.last() ? MessageType::kResult : MessageType::kTensor;
  Transport* downstream = a.last() ? nullptr : &output;
  StageReport report;
  std::optional<std::uint32_t> last_id;
  for (;;) {
    Frame in = input.recv_frame(options.frame_timeout);
    switch (in.type) {
      case MessageType::kTensor: {
        if (last_id && in.image_id <= *last_id) {
          fail(label + ": image id " + std::to_string(in.image_id) + " after " +
                   std::to_string(*last_id),
               control, downstream);
        }
        last_id = in.image_id;
        std::uint64_t received = 0;
        cnn::Tensor x;
        try {
          x = in.to_tensor();
          received = x.size();
        } catch (const ShapeError& e) {
          fail(label + ": malformed TENSOR: " + e.what(), control, downstream);
        }
        if (received != a.input_shape.elements()) {
          fail(label + ": expected " + std::to_string(a.input_shape.elements()) +
                   " elements (shape " + a.input_shape.to_string() + "), received " +
                   std::to_string(received) + " (shape " + x.shape().to_string() + ")",
               control, downstream);
        }
        if (x.shape() != a.input_shape) x = std::move(x).reshaped(a.input_shape);
        cnn::Tensor y;
        const auto t0 = Clock::now();
        try {
          y = cnn::forward_range(*model, a.blocks, x, a.range);
        } catch (const Error& e) {
          fail(label + ": image " + std::to_string(in.image_id) + ": " + e.what(), control,
               downstream);
        }
        report.busy_ns += static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
        ++report.images;
        Frame out = Frame::tensor(in.image_id, y);
        out.type = out_type;
        output.send_frame(out);
        break;
      }
      case MessageType::kDone:
        if (!a.last()) output.send_frame(Frame::done());
        report.data_bytes_sent = output.data_bytes_sent();
        return report;
      case MessageType::kError: {
        // An upstream stage failed; pass the diagnostic along and stop.
        const auto text = in.text();
        if (downstream) try_send(*downstream, in);
        if (&control != &input) try_send(control, in);
        throw StageFailure(text);
      }
      default:
        fail(label + ": unexpected " + std::string(to_string(in.type)) + " frame", control,
             downstream);
    }
  }
}

StageReport serve_session(Transport& control, Listener& listener, Connector& connector,
                          const WorkerOptions& options) {
  Frame assign_frame = control.recv_frame(options.frame_timeout);
  if (assign_frame.type == MessageType::kDone) return {};  // requester gave up before assigning
  StageAssignment a;
  try {
    a = decode_assignment(assign_frame);
  } catch (const Error& e) {
    fail(std::string("bad ASSIGN: ") + e.what(), control, nullptr);
  }
  const auto label = stage_label(a);
  spdlog::info("{}: layers [{}, {}), downstream {}", label, a.range.begin, a.range.end,
               a.downstream);

  std::unique_ptr<Transport> downstream;
  if (!a.last()) {
    try {
      downstream = connector.connect(a.downstream);
      downstream->send_frame(Frame::hello("upstream"));
    } catch (const TransportError& e) {
      fail(label + ": cannot reach downstream " + a.downstream + ": " + e.what(), control,
           nullptr);
    }
  }
  std::unique_ptr<Transport> upstream;
  if (a.stage_index > 0) {
    try {
      upstream = listener.accept(options.frame_timeout);
      expect_hello(*upstream, "upstream", options.frame_timeout);
    } catch (const TransportError& e) {
      fail(label + ": no upstream connection: " + e.what(), control, downstream.get());
    }
  }
  control.send_frame(Frame::hello("ready"));

  Transport& input = upstream ? *upstream : control;
  Transport& output = downstream ? *downstream : control;
  StageReport report;
  try {
    report = run_stage(a, input, output, control, options);
  } catch (const TransportError& e) {
    const auto text = label + ": channel failure: " + e.what();
    spdlog::error("{}", text);
    try_send(control, Frame::error(text));
    if (downstream) try_send(*downstream, Frame::error(text));
    throw;
  }
  if (&output == &control) report.data_bytes_sent = control.data_bytes_sent();
  control.send_frame(report_frame(report));
  spdlog::info("{}: done after {} images", label, report.images);
  return report;
}

int serve_worker(Listener& listener, Connector& connector, const WorkerOptions& options) {
  cnn::kernels::set_threads(options.kernel_threads);
  try {
    auto control = listener.accept(options.accept_timeout);
    expect_hello(*control, "requester", options.frame_timeout);
    serve_session(*control, listener, connector, options);
    return 0;
  } catch (const StageFailure&) {
    return 1;
  } catch (const TransportError& e) {
    spdlog::error("worker: {}", e.what());
    return 2;
  }
}

}  // namespace edgepipe::runtime
