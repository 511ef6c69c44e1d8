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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "edgepipe/errors.hpp"
#include "edgepipe/runtime/frame.hpp"

namespace edgepipe::runtime {

using Millis = std::chrono::milliseconds;
inline constexpr Millis kDefaultFrameTimeout{30'000};

class TransportError : public Error {
 public:
  enum class Kind {
    kTimeout,  // nothing arrived in time
    kClosed,   // peer closed at a frame boundary
    kBroken,   // I/O failure or close in the middle of a frame
    kProtocol, // bytes arrived but do not form a frame
  };
  TransportError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Ordered, reliable, bidirectional frame channel. One thread may send while
/// another receives; concurrent senders (or receivers) are not supported.
class Transport {
 public:
  virtual ~Transport() = default;

  /// Throws TransportError(kBroken) if the channel is gone.
  virtual void send_frame(const Frame& frame) = 0;
  /// Throws TransportError on timeout, close or failure.
  virtual Frame recv_frame(Millis timeout) = 0;
  /// Shuts the channel down; a blocked peer receive sees kClosed.
  virtual void close() = 0;

  /// Encoded bytes of every frame sent so far.
  std::uint64_t bytes_sent() const noexcept { return bytes_sent_.load(std::memory_order_relaxed); }
  /// Encoded bytes of TENSOR/RESULT frames sent so far.
  std::uint64_t data_bytes_sent() const noexcept {
    return data_bytes_sent_.load(std::memory_order_relaxed);
  }

 protected:
  void count_sent(const Frame& f) noexcept {
    bytes_sent_.fetch_add(f.encoded_size(), std::memory_order_relaxed);
    if (f.type == MessageType::kTensor || f.type == MessageType::kResult) {
      data_bytes_sent_.fetch_add(f.encoded_size(), std::memory_order_relaxed);
    }
  }

 private:
  std::atomic<std::uint64_t> bytes_sent_{0};
  std::atomic<std::uint64_t> data_bytes_sent_{0};
};

class Listener {
 public:
  virtual ~Listener() = default;
  /// Address peers pass to Connector::connect.
  virtual std::string address() const = 0;
  /// Throws TransportError(kTimeout) if nobody connects in time.
  virtual std::unique_ptr<Transport> accept(Millis timeout) = 0;
};

class Connector {
 public:
  virtual ~Connector() = default;
  /// Throws TransportError(kBroken) if the address cannot be reached.
  virtual std::unique_ptr<Transport> connect(const std::string& address) = 0;
};

// TCP. Addresses are "host:port"; port 0 binds an ephemeral port.
std::unique_ptr<Listener> tcp_listen(const std::string& address);
std::unique_ptr<Connector> tcp_connector();
std::unique_ptr<Transport> tcp_connect(const std::string& address);

}  // namespace edgepipe::runtime
