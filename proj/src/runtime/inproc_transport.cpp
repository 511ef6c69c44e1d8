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

#include "edgepipe/runtime/inproc_transport.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>

namespace edgepipe::runtime {
namespace {

using Clock = std::chrono::steady_clock;

// One direction of a link.
struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::pair<Clock::time_point, Frame>> queue;
  Clock::time_point last_ready{};
  bool closed = false;
};

class InProcTransport final : public Transport {
 public:
  InProcTransport(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out, LinkModel link)
      : in_(std::move(in)), out_(std::move(out)), link_(link) {}
  ~InProcTransport() override { close(); }

  void send_frame(const Frame& frame) override {
    if (frame.dims.size() > kMaxDims || frame.payload.size() > kMaxPayloadBytes) {
      throw FrameError(FrameError::Kind::kTooLarge, "frame too large");
    }
    {
      std::lock_guard lock(out_->mu);
      if (out_->closed) {
        throw TransportError(TransportError::Kind::kBroken, "in-process link closed");
      }
      const auto cost = link_.latency + link_.per_element * static_cast<long long>(frame.payload.size() / 4);
      const auto ready = std::max(Clock::now(), out_->last_ready) + cost;
      out_->last_ready = ready;
      out_->queue.emplace_back(ready, frame);
    }
    out_->cv.notify_all();
    count_sent(frame);
  }

  Frame recv_frame(Millis timeout) override {
    const auto deadline = Clock::now() + timeout;
    std::unique_lock lock(in_->mu);
    for (;;) {
      if (!in_->queue.empty()) {
        const auto ready = in_->queue.front().first;
        if (Clock::now() >= ready) {
          Frame f = std::move(in_->queue.front().second);
          in_->queue.pop_front();
          return f;
        }
        if (ready > deadline) {
          in_->cv.wait_until(lock, deadline);
          if (Clock::now() >= deadline) {
            throw TransportError(TransportError::Kind::kTimeout, "timed out waiting for a frame");
          }
        } else {
          in_->cv.wait_until(lock, ready);
        }
        continue;
      }
      if (in_->closed) {
        throw TransportError(TransportError::Kind::kClosed, "in-process link closed by peer");
      }
      if (in_->cv.wait_until(lock, deadline) == std::cv_status::timeout && in_->queue.empty() &&
          !in_->closed) {
        throw TransportError(TransportError::Kind::kTimeout, "timed out waiting for a frame");
      }
    }
  }

  void close() override {
    for (auto* p : {in_.get(), out_.get()}) {
      {
        std::lock_guard lock(p->mu);
        p->closed = true;
      }
      p->cv.notify_all();
    }
  }

 private:
  std::shared_ptr<Pipe> in_;
  std::shared_ptr<Pipe> out_;
  LinkModel link_;
};

struct Backlog {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::unique_ptr<Transport>> pending;
};

}  // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> inproc_pair(LinkModel link) {
  auto a_to_b = std::make_shared<Pipe>();
  auto b_to_a = std::make_shared<Pipe>();
  return {std::make_unique<InProcTransport>(b_to_a, a_to_b, link),
          std::make_unique<InProcTransport>(a_to_b, b_to_a, link)};
}

struct InProcNetwork::State {
  LinkModel link;
  std::mutex mu;
  std::map<std::string, std::shared_ptr<Backlog>> listeners;
  int next_id = 0;
};

namespace {

class InProcListener final : public Listener {
 public:
  InProcListener(std::shared_ptr<InProcNetwork::State> net, std::string address,
                 std::shared_ptr<Backlog> backlog)
      : net_(std::move(net)), address_(std::move(address)), backlog_(std::move(backlog)) {}

  ~InProcListener() override;

  std::string address() const override { return address_; }

  std::unique_ptr<Transport> accept(Millis timeout) override {
    std::unique_lock lock(backlog_->mu);
    if (!backlog_->cv.wait_for(lock, timeout, [&] { return !backlog_->pending.empty(); })) {
      throw TransportError(TransportError::Kind::kTimeout,
                           "no connection on " + address_ + " in time");
    }
    auto t = std::move(backlog_->pending.front());
    backlog_->pending.pop_front();
    return t;
  }

 private:
  std::shared_ptr<InProcNetwork::State> net_;
  std::string address_;
  std::shared_ptr<Backlog> backlog_;
};

class InProcConnector final : public Connector {
 public:
  explicit InProcConnector(std::shared_ptr<InProcNetwork::State> net) : net_(std::move(net)) {}

  std::unique_ptr<Transport> connect(const std::string& address) override;

 private:
  std::shared_ptr<InProcNetwork::State> net_;
};

}  // namespace

InProcListener::~InProcListener() {
  std::lock_guard lock(net_->mu);
  net_->listeners.erase(address_);
}

std::unique_ptr<Transport> InProcConnector::connect(const std::string& address) {
  std::shared_ptr<Backlog> backlog;
  {
    std::lock_guard lock(net_->mu);
    auto it = net_->listeners.find(address);
    if (it == net_->listeners.end()) {
      throw TransportError(TransportError::Kind::kBroken, "nobody listens on " + address);
    }
    backlog = it->second;
  }
  auto [client, server] = inproc_pair(net_->link);
  {
    std::lock_guard lock(backlog->mu);
    backlog->pending.push_back(std::move(server));
  }
  backlog->cv.notify_all();
  return std::move(client);
}

InProcNetwork::InProcNetwork(LinkModel link) : state_(std::make_shared<State>()) {
  state_->link = link;
}

std::unique_ptr<Listener> InProcNetwork::listen() {
  auto backlog = std::make_shared<Backlog>();
  std::string address;
  {
    std::lock_guard lock(state_->mu);
    address = "inproc:" + std::to_string(state_->next_id++);
    state_->listeners.emplace(address, backlog);
  }
  return std::make_unique<InProcListener>(state_, address, std::move(backlog));
}

std::unique_ptr<Connector> InProcNetwork::connector() {
  return std::make_unique<InProcConnector>(state_);
}

}  // namespace edgepipe::runtime
