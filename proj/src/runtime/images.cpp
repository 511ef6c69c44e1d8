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

#include "edgepipe/runtime/images.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

#include "edgepipe/bytes.hpp"
#include "edgepipe/cnn/weights.hpp"

namespace edgepipe::runtime {
namespace {

std::vector<std::byte> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open " + p.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [](char c) { return std::byte(c); });
  return out;
}

// Binary PGM: "P5" <ws> width <ws> height <ws> maxval <single ws> pixels.
cnn::Tensor read_pgm(const std::filesystem::path& p, const cnn::TensorShape& shape) {
  const auto data = read_file(p);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < data.size()) {
      const char c = static_cast<char>(data[pos]);
      if (c == '#') {
        while (pos < data.size() && static_cast<char>(data[pos]) != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&] {
    skip_space();
    std::uint64_t v = 0;
    const auto start = pos;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(static_cast<char>(data[pos]) - '0');
      if (v > 1u << 20) throw ParseError(p.string() + ": PGM header value too large");
      ++pos;
    }
    if (pos == start) throw ParseError(p.string() + ": malformed PGM header");
    return v;
  };
  if (data.size() < 2 || static_cast<char>(data[0]) != 'P' || static_cast<char>(data[1]) != '5') {
    throw ParseError(p.string() + ": not a binary PGM (P5) file");
  }
  pos = 2;
  const auto width = number();
  const auto height = number();
  const auto maxval = number();
  if (maxval == 0 || maxval > 255) throw ParseError(p.string() + ": only 8-bit PGM is supported");
  ++pos;  // single whitespace after maxval
  if (data.size() < pos || data.size() - pos != width * height) {
    throw ParseError(p.string() + ": PGM pixel data has the wrong length");
  }
  if (width * height != shape.elements()) {
    throw ShapeError(p.string() + ": " + std::to_string(width) + "x" + std::to_string(height) +
                     " image does not fit shape " + shape.to_string());
  }
  std::vector<float> values(width * height);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<float>(std::to_integer<unsigned>(data[pos + i])) /
                static_cast<float>(maxval);
  }
  return cnn::Tensor(shape, std::move(values));
}

cnn::Tensor read_f32(const std::filesystem::path& p, const cnn::TensorShape& shape) {
  const auto data = read_file(p);
  if (data.size() != shape.elements() * 4) {
    throw ShapeError(p.string() + ": " + std::to_string(data.size()) + " bytes, shape " +
                     shape.to_string() + " needs " + std::to_string(shape.elements() * 4));
  }
  bytes::Reader r(data);
  std::vector<float> values(shape.elements());
  for (auto& v : values) v = r.f32();
  cnn::Tensor t(shape, std::move(values));
  if (!t.all_finite()) throw ParseError(p.string() + ": non-finite pixel values");
  return t;
}

}  // namespace

std::vector<cnn::Tensor> synthetic_images(const cnn::TensorShape& shape, std::size_t n,
                                          std::uint64_t seed) {
  cnn::SeededUniform rng(seed);
  std::vector<cnn::Tensor> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<float> values(shape.elements());
    for (auto& v : values) v = rng.next(0.0f, 1.0f);
    out.emplace_back(shape, std::move(values));
  }
  return out;
}

std::vector<cnn::Tensor> load_images(const std::filesystem::path& dir,
                                     const cnn::TensorShape& shape) {
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".pgm" || ext == ".f32")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<cnn::Tensor> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    out.push_back(f.extension() == ".pgm" ? read_pgm(f, shape) : read_f32(f, shape));
  }
  return out;
}

}  // namespace edgepipe::runtime
