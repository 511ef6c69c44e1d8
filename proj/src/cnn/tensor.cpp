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

#include "edgepipe/cnn/tensor.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

namespace edgepipe::cnn {

TensorShape::TensorShape(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("tensor shape needs at least one extent");
  std::uint64_t n = 1;
  for (auto d : dims_) {
    if (d == 0) throw ShapeError("tensor extent must be >= 1, got " + to_string());
    if (n > std::numeric_limits<std::uint64_t>::max() / d) {
      throw ShapeError("element count of " + to_string() + " overflows 64 bits");
    }
    n *= d;
  }
  elements_ = n;
}

std::string TensorShape::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) os << ',';
    os << dims_[i];
  }
  os << ')';
  return os.str();
}

Tensor::Tensor(TensorShape shape) : shape_(std::move(shape)), values_(shape_.elements(), 0.0f) {}

Tensor::Tensor(TensorShape shape, std::vector<float> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != shape_.elements()) {
    throw ShapeError("tensor " + shape_.to_string() + " needs " +
                     std::to_string(shape_.elements()) + " values, got " +
                     std::to_string(values_.size()));
  }
}

bool Tensor::all_finite() const noexcept {
  for (float v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Tensor Tensor::reshaped(TensorShape shape) const& {
  Tensor copy = *this;
  return std::move(copy).reshaped(std::move(shape));
}

Tensor Tensor::reshaped(TensorShape shape) && {
  if (shape.elements() != shape_.elements()) {
    throw ShapeError("cannot reshape " + shape_.to_string() + " to " + shape.to_string());
  }
  shape_ = std::move(shape);
  return std::move(*this);
}

bool bit_identical(const Tensor& a, const Tensor& b) noexcept {
  if (a.shape() != b.shape()) return false;
  auto x = a.values();
  auto y = b.values();
  return std::memcmp(x.data(), y.data(), x.size_bytes()) == 0;
}

}  // namespace edgepipe::cnn
