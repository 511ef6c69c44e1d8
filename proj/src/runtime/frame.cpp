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

#include "edgepipe/runtime/frame.hpp"

#include "edgepipe/bytes.hpp"

namespace edgepipe::runtime {
namespace {

constexpr std::size_t kPrefixBytes = 11;

bool carries_tensor(MessageType t) {
  return t == MessageType::kTensor || t == MessageType::kResult;
}

bool known_type(std::uint8_t t) { return t >= 1 && t <= 6; }

std::uint64_t dims_product(const std::vector<std::uint32_t>& dims) {
  std::uint64_t n = 1;
  for (auto d : dims) {
    n *= d;
    if (n > kMaxPayloadBytes) return n;
  }
  return n;
}

void check_tensor_payload(MessageType type, const std::vector<std::uint32_t>& dims,
                          std::size_t payload_bytes) {
  if (!carries_tensor(type)) return;
  const auto n = dims_product(dims);
  if (dims.empty() || n * 4 != payload_bytes) {
    throw FrameError(FrameError::Kind::kPayloadMismatch,
                     std::string(to_string(type)) + " frame payload of " +
                         std::to_string(payload_bytes) + " bytes does not match " +
                         std::to_string(dims.size()) + " dims with " + std::to_string(n) +
                         " elements");
  }
}

Frame tensor_frame(MessageType type, std::uint32_t image_id, const cnn::Tensor& t) {
  Frame f;
  f.type = type;
  f.image_id = image_id;
  f.dims = t.shape().dims();
  f.payload.reserve(t.size() * 4);
  for (float v : t.values()) bytes::put_f32(f.payload, v);
  return f;
}

}  // namespace

std::string_view to_string(MessageType t) noexcept {
  switch (t) {
    case MessageType::kHello: return "HELLO";
    case MessageType::kAssign: return "ASSIGN";
    case MessageType::kTensor: return "TENSOR";
    case MessageType::kResult: return "RESULT";
    case MessageType::kDone: return "DONE";
    case MessageType::kError: return "ERROR";
  }
  return "UNKNOWN";
}

Frame Frame::hello(std::string_view role) {
  Frame f;
  f.type = MessageType::kHello;
  bytes::put_text(f.payload, role);
  return f;
}

Frame Frame::tensor(std::uint32_t image_id, const cnn::Tensor& t) {
  return tensor_frame(MessageType::kTensor, image_id, t);
}

Frame Frame::result(std::uint32_t image_id, const cnn::Tensor& t) {
  return tensor_frame(MessageType::kResult, image_id, t);
}

Frame Frame::done() {
  Frame f;
  f.type = MessageType::kDone;
  return f;
}

Frame Frame::error(std::string_view text) {
  Frame f;
  f.type = MessageType::kError;
  bytes::put_text(f.payload, text);
  return f;
}

cnn::Tensor Frame::to_tensor() const {
  if (!carries_tensor(type)) {
    throw ShapeError(std::string(to_string(type)) + " frame does not carry a tensor");
  }
  check_tensor_payload(type, dims, payload.size());
  cnn::TensorShape shape(dims);
  std::vector<float> values(shape.elements());
  bytes::Reader r(payload);
  for (auto& v : values) v = r.f32();
  return cnn::Tensor(std::move(shape), std::move(values));
}

std::string Frame::text() const {
  return {reinterpret_cast<const char*>(payload.data()), payload.size()};
}

void encode_frame_into(const Frame& frame, std::vector<std::byte>& out) {
  if (frame.dims.size() > kMaxDims) {
    throw FrameError(FrameError::Kind::kTooLarge, "frame has more than 255 dims");
  }
  if (frame.payload.size() > kMaxPayloadBytes) {
    throw FrameError(FrameError::Kind::kTooLarge,
                     "frame payload of " + std::to_string(frame.payload.size()) + " bytes too large");
  }
  check_tensor_payload(frame.type, frame.dims, frame.payload.size());
  out.reserve(out.size() + frame.encoded_size());
  bytes::put_text(out, "PCNF");
  bytes::put_u8(out, kWireVersion);
  bytes::put_u8(out, static_cast<std::uint8_t>(frame.type));
  bytes::put_u32(out, frame.image_id);
  bytes::put_u8(out, static_cast<std::uint8_t>(frame.dims.size()));
  for (auto d : frame.dims) bytes::put_u32(out, d);
  bytes::put_u32(out, static_cast<std::uint32_t>(frame.payload.size()));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
}

std::vector<std::byte> encode_frame(const Frame& frame) {
  std::vector<std::byte> out;
  encode_frame_into(frame, out);
  return out;
}

HeaderPrefix decode_header_prefix(std::span<const std::byte> first11) {
  if (first11.size() < kPrefixBytes) {
    throw FrameError(FrameError::Kind::kTruncated, "frame header truncated");
  }
  bytes::Reader r(first11);
  if (r.text(4) != "PCNF") throw FrameError(FrameError::Kind::kBadMagic, "bad frame magic");
  if (auto v = r.u8(); v != kWireVersion) {
    throw FrameError(FrameError::Kind::kBadVersion,
                     "unsupported frame version " + std::to_string(v));
  }
  const auto type = r.u8();
  if (!known_type(type)) {
    throw FrameError(FrameError::Kind::kUnknownType,
                     "unknown message type " + std::to_string(type));
  }
  HeaderPrefix h;
  h.type = static_cast<MessageType>(type);
  h.image_id = r.u32();
  h.dim_count = r.u8();
  return h;
}

Frame decode_frame(std::span<const std::byte> in) {
  const auto h = decode_header_prefix(in);
  const std::size_t header = header_bytes(h.dim_count);
  if (in.size() < header) throw FrameError(FrameError::Kind::kTruncated, "frame header truncated");
  bytes::Reader r(in.subspan(kPrefixBytes));
  Frame f;
  f.type = h.type;
  f.image_id = h.image_id;
  f.dims.resize(h.dim_count);
  for (auto& d : f.dims) d = r.u32();
  const auto len = r.u32();
  if (len > kMaxPayloadBytes) {
    throw FrameError(FrameError::Kind::kTooLarge, "frame payload length " + std::to_string(len) + " too large");
  }
  if (r.remaining() < len) {
    throw FrameError(FrameError::Kind::kTruncated,
                     "frame payload truncated: " + std::to_string(r.remaining()) + " of " +
                         std::to_string(len) + " bytes");
  }
  if (r.remaining() > len) {
    throw FrameError(FrameError::Kind::kTrailingBytes,
                     std::to_string(r.remaining() - len) + " bytes after frame payload");
  }
  auto payload = r.take(len);
  f.payload.assign(payload.begin(), payload.end());
  check_tensor_payload(f.type, f.dims, f.payload.size());
  return f;
}

}  // namespace edgepipe::runtime
