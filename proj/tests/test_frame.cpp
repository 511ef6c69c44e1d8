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

#include <gtest/gtest.h>

#include "edgepipe/runtime/assignment.hpp"
#include "edgepipe/runtime/frame.hpp"
#include "edgepipe/runtime/worker.hpp"
#include "edgepipe/cnn/lenet.hpp"
#include "edgepipe/cnn/model_io.hpp"
#include "test_support.hpp"

using namespace edgepipe;
using namespace edgepipe::runtime;

namespace {

std::vector<std::byte> bytes_of(std::initializer_list<unsigned> v) {
  std::vector<std::byte> out;
  for (auto b : v) out.push_back(static_cast<std::byte>(b));
  return out;
}

std::vector<std::byte> cat(std::vector<std::byte> a, const std::vector<std::byte>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const auto kMagicV1 = bytes_of({'P', 'C', 'N', 'F', 1});

FrameError::Kind decode_error(std::span<const std::byte> bytes) {
  try {
    decode_frame(bytes);
  } catch (const FrameError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode succeeded";
  return FrameError::Kind::kTooLarge;
}

}  // namespace

TEST(FrameGolden, Hello) {
  const auto f = Frame::hello("ready");
  const auto expected = cat(kMagicV1, bytes_of({1, 0, 0, 0, 0, 0, 5, 0, 0, 0,
                                                'r', 'e', 'a', 'd', 'y'}));
  EXPECT_EQ(encode_frame(f), expected);
  EXPECT_EQ(decode_frame(expected), f);
}

TEST(FrameGolden, Assign) {
  Frame f;
  f.type = MessageType::kAssign;
  f.dims = {1, 28, 28};
  f.payload = bytes_of({0xaa, 0xbb});
  const auto expected =
      cat(kMagicV1, bytes_of({2, 0, 0, 0, 0, 3, 1, 0, 0, 0, 28, 0, 0, 0, 28, 0, 0, 0, 2, 0, 0, 0,
                              0xaa, 0xbb}));
  EXPECT_EQ(encode_frame(f), expected);
  EXPECT_EQ(decode_frame(expected), f);
}

TEST(FrameGolden, Tensor) {
  const cnn::Tensor t(cnn::TensorShape({1, 1, 2}), {1.0f, -2.0f});
  const auto f = Frame::tensor(0x01020304, t);
  const auto expected =
      cat(kMagicV1, bytes_of({3, 0x04, 0x03, 0x02, 0x01, 3, 1, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 8,
                              0, 0, 0, 0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0xc0}));
  EXPECT_EQ(encode_frame(f), expected);
  EXPECT_EQ(decode_frame(expected), f);
  EXPECT_EQ(decode_frame(expected).to_tensor(), t);
}

TEST(FrameGolden, Result) {
  const cnn::Tensor t(cnn::TensorShape::flat(1), {0.5f});
  const auto f = Frame::result(7, t);
  const auto expected = cat(kMagicV1, bytes_of({4, 7, 0, 0, 0, 1, 1, 0, 0, 0, 4, 0, 0, 0, 0x00,
                                                0x00, 0x00, 0x3f}));
  EXPECT_EQ(encode_frame(f), expected);
  EXPECT_EQ(decode_frame(expected), f);
}

TEST(FrameGolden, DoneIsHeaderOnly) {
  const auto expected = cat(kMagicV1, bytes_of({5, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(encode_frame(Frame::done()), expected);
  EXPECT_EQ(expected.size(), kFixedHeaderBytes);
  EXPECT_EQ(decode_frame(expected), Frame::done());
}

TEST(FrameGolden, Error) {
  const auto expected = cat(kMagicV1, bytes_of({6, 0, 0, 0, 0, 0, 3, 0, 0, 0, 'b', 'a', 'd'}));
  EXPECT_EQ(encode_frame(Frame::error("bad")), expected);
  EXPECT_EQ(decode_frame(expected).text(), "bad");
}

TEST(Frame, Pool1TensorSize) {
  const cnn::Tensor t(cnn::TensorShape({6, 12, 12}));
  const auto bytes = encode_frame(Frame::tensor(3, t));
  EXPECT_EQ(bytes.size(), 864u * 4 + header_bytes(3));
  EXPECT_EQ(decode_frame(bytes).to_tensor(), t);
}

TEST(Frame, DecodeErrorsAreDistinct) {
  const auto good = encode_frame(Frame::tensor(1, cnn::Tensor(cnn::TensorShape::flat(2))));
  auto bad_magic = good;
  bad_magic[0] = std::byte{'X'};
  EXPECT_EQ(decode_error(bad_magic), FrameError::Kind::kBadMagic);
  auto bad_version = good;
  bad_version[4] = std::byte{2};
  EXPECT_EQ(decode_error(bad_version), FrameError::Kind::kBadVersion);
  auto bad_type = good;
  bad_type[5] = std::byte{9};
  EXPECT_EQ(decode_error(bad_type), FrameError::Kind::kUnknownType);
  bad_type[5] = std::byte{0};
  EXPECT_EQ(decode_error(bad_type), FrameError::Kind::kUnknownType);
  for (std::size_t n : {0u, 3u, 10u, 14u, 18u, 20u}) {
    EXPECT_EQ(decode_error(std::span(good).first(n)), FrameError::Kind::kTruncated) << n;
  }
  auto trailing = good;
  trailing.push_back(std::byte{0});
  EXPECT_EQ(decode_error(trailing), FrameError::Kind::kTrailingBytes);
  // A TENSOR whose payload disagrees with its dims.
  auto mismatch = encode_frame(Frame::hello("xxxxxxxx"));
  mismatch[5] = std::byte{3};
  EXPECT_EQ(decode_error(mismatch), FrameError::Kind::kPayloadMismatch);
}

TEST(Frame, EncodeRejectsInvalidTensorFrames) {
  Frame f = Frame::tensor(1, cnn::Tensor(cnn::TensorShape::flat(3)));
  f.payload.pop_back();
  EXPECT_THROW(encode_frame(f), FrameError);
  f.dims.assign(300, 1);
  EXPECT_THROW(encode_frame(f), FrameError);
}

// decode(encode(f)) == f over random frames of every type.
TEST(Frame, RandomRoundTrips) {
  testkit::Rng rng(0xF00D);
  for (int i = 0; i < 1000; ++i) {
    Frame f;
    f.type = static_cast<MessageType>(rng.range(1, 6));
    f.image_id = static_cast<std::uint32_t>(rng.next());
    if (f.type == MessageType::kTensor || f.type == MessageType::kResult) {
      const auto rank = rng.range(1, 4);
      std::uint64_t n = 1;
      for (std::uint64_t d = 0; d < rank; ++d) {
        f.dims.push_back(static_cast<std::uint32_t>(rng.range(1, 12)));
        n *= f.dims.back();
      }
      for (std::uint64_t k = 0; k < n * 4; ++k) f.payload.push_back(std::byte(rng.next() & 0xff));
    } else {
      const auto rank = rng.range(0, 5);
      for (std::uint64_t d = 0; d < rank; ++d) {
        f.dims.push_back(static_cast<std::uint32_t>(rng.next()));
      }
      const auto len = rng.range(0, 64);
      for (std::uint64_t k = 0; k < len; ++k) f.payload.push_back(std::byte(rng.next() & 0xff));
    }
    const auto bytes = encode_frame(f);
    ASSERT_EQ(bytes.size(), f.encoded_size());
    ASSERT_EQ(decode_frame(bytes), f) << "frame " << i;
  }
}

TEST(Assignment, RoundTripsAndCoversPlan) {
  const auto lenet = cnn::build_lenet();
  const auto w = cnn::Weights::seeded(lenet.model, 2);
  const auto plan = partition::make_plan(partition::LayerProfile::of(lenet.model), {2, 4});
  const std::vector<std::string> addrs = {"a:1", "b:2", "c:3"};
  const auto as = make_assignments(lenet.model, w, plan, addrs);
  ASSERT_EQ(as.size(), 3u);
  EXPECT_EQ(as[0].downstream, "b:2");
  EXPECT_EQ(as[2].downstream, "requester");
  EXPECT_EQ(as[1].input_shape, cnn::TensorShape({6, 12, 12}));
  std::size_t next = 0;
  for (const auto& a : as) {
    EXPECT_EQ(a.range.begin, next);
    next = a.range.end;
    EXPECT_EQ(decode_assignment(decode_frame(encode_frame(encode_assignment(a)))), a);
  }
  EXPECT_EQ(next, 7u);
  EXPECT_THROW(make_assignments(lenet.model, w, plan, std::span(addrs).first(2)),
               std::invalid_argument);
}

TEST(Assignment, RejectsMalformedPayloads) {
  Frame f;
  f.type = MessageType::kAssign;
  f.dims = {1, 28, 28};
  f.payload = bytes_of({0, 0, 0});
  EXPECT_THROW(decode_assignment(f), ParseError);
  EXPECT_THROW(decode_assignment(Frame::done()), ParseError);
}

TEST(StageReportFrame, RoundTrips) {
  const StageReport r{12, 3456789, 99999};
  const auto f = report_frame(r);
  EXPECT_EQ(f.payload.size(), 24u);
  EXPECT_EQ(decode_report(decode_frame(encode_frame(f))), r);
  EXPECT_THROW(decode_report(Frame::done()), ParseError);
}
