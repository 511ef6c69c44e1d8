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

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "edgepipe/errors.hpp"

namespace edgepipe::cnn {

/// Ordered extents of a tensor: (channels, height, width) for feature maps,
/// a single extent for flat vectors. Every extent is at least 1.
class TensorShape {
 public:
  TensorShape() = default;
  explicit TensorShape(std::vector<std::uint32_t> dims);
  TensorShape(std::initializer_list<std::uint32_t> dims)
      : TensorShape(std::vector<std::uint32_t>(dims)) {}

  static TensorShape flat(std::uint32_t n) { return TensorShape({n}); }

  const std::vector<std::uint32_t>& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::uint64_t elements() const noexcept { return elements_; }
  bool spatial() const noexcept { return dims_.size() == 3; }

  std::uint32_t channels() const { return dims_.at(0); }
  std::uint32_t height() const { return dims_.at(1); }
  std::uint32_t width() const { return dims_.at(2); }

  std::string to_string() const;

  friend bool operator==(const TensorShape&, const TensorShape&) = default;

 private:
  std::vector<std::uint32_t> dims_;
  std::uint64_t elements_ = 0;
};

/// Row-major float32 tensor.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(TensorShape shape);
  Tensor(TensorShape shape, std::vector<float> values);

  const TensorShape& shape() const noexcept { return shape_; }
  std::span<const float> values() const noexcept { return values_; }
  std::span<float> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool all_finite() const noexcept;

  /// Same values viewed with another shape of equal element count.
  Tensor reshaped(TensorShape shape) const&;
  Tensor reshaped(TensorShape shape) &&;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  TensorShape shape_;
  std::vector<float> values_;
};

/// Bitwise equality (distinguishes -0.0f/0.0f, treats identical NaN payloads
/// as equal).
bool bit_identical(const Tensor& a, const Tensor& b) noexcept;

}  // namespace edgepipe::cnn
