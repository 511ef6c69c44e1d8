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

#include "edgepipe/cnn/weights_io.hpp"

#include <fstream>
#include <iterator>

#include "edgepipe/bytes.hpp"

namespace edgepipe::cnn {
namespace {

constexpr std::uint32_t kVersion = 1;

}  // namespace

std::vector<std::byte> encode_weight_blocks(std::span<const LayerWeights> blocks) {
  std::vector<std::byte> out;
  bytes::put_text(out, "PCNW");
  bytes::put_u32(out, kVersion);
  bytes::put_u32(out, static_cast<std::uint32_t>(blocks.size()));
  for (const auto& b : blocks) {
    bytes::put_u32(out, static_cast<std::uint32_t>(b.kernel().size()));
    bytes::put_u32(out, static_cast<std::uint32_t>(b.bias().size()));
    for (float v : b.kernel()) bytes::put_f32(out, v);
    for (float v : b.bias()) bytes::put_f32(out, v);
  }
  return out;
}

std::vector<LayerWeights> decode_weight_blocks(std::span<const std::byte> in) {
  bytes::Reader r(in);
  try {
    if (r.text(4) != "PCNW") throw ParseError("weights: bad magic, expected \"PCNW\"");
    if (auto v = r.u32(); v != kVersion) {
      throw ParseError("weights: unsupported version " + std::to_string(v));
    }
    const auto count = r.u32();
    std::vector<LayerWeights> blocks;
    blocks.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto nk = r.u32();
      const auto nb = r.u32();
      if ((std::uint64_t{nk} + nb) * 4 > r.remaining()) {
        throw ParseError("weights: block " + std::to_string(i) + " truncated");
      }
      std::vector<float> kernel(nk);
      std::vector<float> bias(nb);
      for (auto& v : kernel) v = r.f32();
      for (auto& v : bias) v = r.f32();
      blocks.emplace_back(std::move(kernel), std::move(bias));
    }
    if (r.remaining() != 0) throw ParseError("weights: trailing bytes after last block");
    return blocks;
  } catch (const std::out_of_range&) {
    throw ParseError("weights: truncated file");
  }
}

void save_weights(const Weights& weights, const std::filesystem::path& path) {
  const auto data = encode_weight_blocks(weights.blocks());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write weights file " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

Weights load_weights(const ModelGraph& model, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open weights file " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto blocks = decode_weight_blocks(std::as_bytes(std::span(raw)));
  return Weights(model, std::move(blocks));
}

}  // namespace edgepipe::cnn
