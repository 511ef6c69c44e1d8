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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgepipe/cnn/tensor.hpp"
#include "edgepipe/errors.hpp"

// Wire format of one frame (integers little-endian):
//
//   offset  size      field
//   0       4         magic "PCNF"
//   4       1         version (1)
//   5       1         message type (HELLO=1 ASSIGN=2 TENSOR=3 RESULT=4
//                     DONE=5 ERROR=6)
//   6       4         image id
//   10      1         dim count d
//   11      4*d       dims
//   11+4d   4         payload length p
//   15+4d   p         payload
//
// TENSOR/RESULT payloads are float32 LE with p = 4 * product(dims). ERROR
// payloads are UTF-8 text. HELLO carries a role string. ASSIGN carries a
// StageAssignment (see assignment.hpp). DONE from the requester is header
// only; DONE sent back by a worker carries its stage report.

namespace edgepipe::runtime {

enum class MessageType : std::uint8_t {
  kHello = 1,
  kAssign = 2,
  kTensor = 3,
  kResult = 4,
  kDone = 5,
  kError = 6,
};

std::string_view to_string(MessageType t) noexcept;

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kFixedHeaderBytes = 15;
inline constexpr std::size_t kMaxDims = 255;
inline constexpr std::uint32_t kMaxPayloadBytes = 256u << 20;

inline constexpr std::size_t header_bytes(std::size_t dims) noexcept {
  return kFixedHeaderBytes + 4 * dims;
}

struct Frame {
  MessageType type = MessageType::kHello;
  std::uint32_t image_id = 0;
  std::vector<std::uint32_t> dims;
  std::vector<std::byte> payload;

  static Frame hello(std::string_view role);
  static Frame tensor(std::uint32_t image_id, const cnn::Tensor& t);
  static Frame result(std::uint32_t image_id, const cnn::Tensor& t);
  static Frame done();
  static Frame error(std::string_view text);

  /// TENSOR/RESULT payload as a tensor. Throws ShapeError if the frame is
  /// not a tensor frame or dims are invalid.
  cnn::Tensor to_tensor() const;
  /// Payload as text (HELLO/ERROR).
  std::string text() const;

  std::size_t encoded_size() const noexcept { return header_bytes(dims.size()) + payload.size(); }

  friend bool operator==(const Frame&, const Frame&) = default;
};

class FrameError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kBadVersion,
    kUnknownType,
    kTruncated,
    kPayloadMismatch,
    kTrailingBytes,
    kTooLarge,
  };

  FrameError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Throws FrameError(kPayloadMismatch/kTooLarge) for frames that violate the
/// format invariants.
std::vector<std::byte> encode_frame(const Frame& frame);
void encode_frame_into(const Frame& frame, std::vector<std::byte>& out);

/// Decodes exactly one frame occupying all of `bytes`.
Frame decode_frame(std::span<const std::byte> bytes);

/// Parsed fixed part of a header, for stream readers: after reading
/// kFixedHeaderBytes - 4 bytes (through the dim count) the reader knows how
/// many more header bytes follow.
struct HeaderPrefix {
  MessageType type;
  std::uint32_t image_id;
  std::size_t dim_count;
};
HeaderPrefix decode_header_prefix(std::span<const std::byte> first11);

}  // namespace edgepipe::runtime
