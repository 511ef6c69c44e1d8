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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "edgepipe/runtime/transport.hpp"

namespace edgepipe::runtime {
namespace {

using Clock = std::chrono::steady_clock;

std::string errno_text(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

std::pair<std::string, std::string> split_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw TransportError(TransportError::Kind::kBroken,
                         "bad address \"" + address + "\", expected host:port");
  }
  return {address.substr(0, colon), address.substr(colon + 1)};
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void resolve(const std::string& address, bool passive, AddrInfo& out) {
  auto [host, port] = split_address(address);
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  if (int rc = getaddrinfo(host.c_str(), port.c_str(), &hints, &out.head); rc != 0) {
    throw TransportError(TransportError::Kind::kBroken,
                         "cannot resolve " + address + ": " + gai_strerror(rc));
  }
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<Millis>(deadline - Clock::now()).count();
  return left <= 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

class TcpTransport final : public Transport {
 public:
  explicit TcpTransport(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~TcpTransport() override {
    if (fd_ >= 0) ::close(fd_);
  }

  void send_frame(const Frame& frame) override {
    std::lock_guard lock(send_mu_);
    scratch_.clear();
    encode_frame_into(frame, scratch_);
    const std::byte* p = scratch_.data();
    std::size_t left = scratch_.size();
    while (left > 0) {
      const ssize_t n = ::send(fd_, p, left, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(TransportError::Kind::kBroken, errno_text("send"));
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
    count_sent(frame);
  }

  Frame recv_frame(Millis timeout) override {
    std::lock_guard lock(recv_mu_);
    const auto deadline = Clock::now() + timeout;
    fill(11, deadline, true);
    HeaderPrefix prefix;
    try {
      prefix = decode_header_prefix(std::span(buf_).first(11));
    } catch (const FrameError& e) {
      throw TransportError(TransportError::Kind::kProtocol, e.what());
    }
    const std::size_t header = header_bytes(prefix.dim_count);
    fill(header, deadline, false);
    std::uint32_t len = 0;
    for (int i = 3; i >= 0; --i) {
      len = (len << 8) | std::to_integer<std::uint32_t>(buf_[header - 4 + i]);
    }
    if (len > kMaxPayloadBytes) {
      throw TransportError(TransportError::Kind::kProtocol,
                           "frame payload length " + std::to_string(len) + " too large");
    }
    fill(header + len, deadline, false);
    Frame f;
    try {
      f = decode_frame(std::span(buf_).first(header + len));
    } catch (const FrameError& e) {
      throw TransportError(TransportError::Kind::kProtocol, e.what());
    }
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(header + len));
    return f;
  }

  void close() override { ::shutdown(fd_, SHUT_RDWR); }

 private:
  // Reads until buf_ holds at least `want` bytes.
  void fill(std::size_t want, Clock::time_point deadline, bool at_boundary) {
    while (buf_.size() < want) {
      pollfd pfd{fd_, POLLIN, 0};
      const int rc = ::poll(&pfd, 1, remaining_ms(deadline));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw TransportError(TransportError::Kind::kBroken, errno_text("poll"));
      }
      if (rc == 0) {
        throw TransportError(TransportError::Kind::kTimeout, "timed out waiting for a frame");
      }
      std::byte chunk[64 * 1024];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw TransportError(TransportError::Kind::kBroken, errno_text("recv"));
      }
      if (n == 0) {
        if (at_boundary && buf_.empty()) {
          throw TransportError(TransportError::Kind::kClosed, "connection closed by peer");
        }
        throw TransportError(TransportError::Kind::kBroken,
                             "connection closed in the middle of a frame");
      }
      buf_.insert(buf_.end(), chunk, chunk + n);
    }
  }

  int fd_;
  std::mutex send_mu_;
  std::mutex recv_mu_;
  std::vector<std::byte> scratch_;
  std::vector<std::byte> buf_;
};

class TcpListener final : public Listener {
 public:
  explicit TcpListener(const std::string& address) {
    AddrInfo ai;
    resolve(address, true, ai);
    fd_ = ::socket(ai.head->ai_family, SOCK_STREAM, 0);
    if (fd_ < 0) throw TransportError(TransportError::Kind::kBroken, errno_text("socket"));
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd_, ai.head->ai_addr, ai.head->ai_addrlen) != 0 || ::listen(fd_, 16) != 0) {
      const auto msg = errno_text("cannot listen on " + address);
      ::close(fd_);
      throw TransportError(TransportError::Kind::kBroken, msg);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof bound;
    getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    char host[INET_ADDRSTRLEN] = {};
    inet_ntop(AF_INET, &bound.sin_addr, host, sizeof host);
    address_ = std::string(host) + ":" + std::to_string(ntohs(bound.sin_port));
  }
  ~TcpListener() override { ::close(fd_); }

  std::string address() const override { return address_; }

  std::unique_ptr<Transport> accept(Millis timeout) override {
    const auto deadline = Clock::now() + timeout;
    for (;;) {
      pollfd pfd{fd_, POLLIN, 0};
      const int rc = ::poll(&pfd, 1, remaining_ms(deadline));
      if (rc < 0 && errno == EINTR) continue;
      if (rc < 0) throw TransportError(TransportError::Kind::kBroken, errno_text("poll"));
      if (rc == 0) {
        throw TransportError(TransportError::Kind::kTimeout,
                             "no connection on " + address_ + " in time");
      }
      const int fd = ::accept(fd_, nullptr, nullptr);
      if (fd < 0) {
        if (errno == EINTR || errno == ECONNABORTED) continue;
        throw TransportError(TransportError::Kind::kBroken, errno_text("accept"));
      }
      return std::make_unique<TcpTransport>(fd);
    }
  }

 private:
  int fd_ = -1;
  std::string address_;
};

class TcpConnector final : public Connector {
 public:
  std::unique_ptr<Transport> connect(const std::string& address) override {
    return tcp_connect(address);
  }
};

}  // namespace

std::unique_ptr<Listener> tcp_listen(const std::string& address) {
  return std::make_unique<TcpListener>(address);
}

std::unique_ptr<Connector> tcp_connector() { return std::make_unique<TcpConnector>(); }

std::unique_ptr<Transport> tcp_connect(const std::string& address) {
  AddrInfo ai;
  resolve(address, false, ai);
  const int fd = ::socket(ai.head->ai_family, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError(TransportError::Kind::kBroken, errno_text("socket"));
  int rc;
  do {
    rc = ::connect(fd, ai.head->ai_addr, ai.head->ai_addrlen);
  } while (rc != 0 && errno == EINTR);
  if (rc != 0) {
    const auto msg = errno_text("cannot connect to " + address);
    ::close(fd);
    throw TransportError(TransportError::Kind::kBroken, msg);
  }
  return std::make_unique<TcpTransport>(fd);
}

}  // namespace edgepipe::runtime
