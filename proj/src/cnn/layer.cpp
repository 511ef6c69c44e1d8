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

#include "edgepipe/cnn/layer.hpp"

#include <sstream>

namespace edgepipe::cnn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string label(const LayerSpec& layer) {
  return layer.name.empty() ? describe(layer) : layer.name + " " + describe(layer);
}

[[noreturn]] void mismatch(const LayerSpec& layer, const std::string& expected,
                           const TensorShape& got) {
  throw ShapeError("shape mismatch at layer " + label(layer) + ": expected " + expected +
                   ", got " + got.to_string());
}

std::uint32_t pooled_extent(std::uint32_t in, std::uint32_t pad, std::uint32_t k,
                            std::uint32_t stride) {
  return (in + 2 * pad - k) / stride + 1;
}

}  // namespace

LayerSpec conv(std::uint32_t kernel, std::uint32_t in_channels, std::uint32_t out_channels,
               Activation act, std::uint32_t stride, std::uint32_t padding, std::string name) {
  LayerSpec l{Convolution{kernel, in_channels, out_channels, stride, padding}, act, std::move(name)};
  validate(l);
  return l;
}

LayerSpec max_pool(std::uint32_t window, std::uint32_t stride, std::string name) {
  LayerSpec l{MaxPool{window, stride}, Activation::kNone, std::move(name)};
  validate(l);
  return l;
}

LayerSpec fully_connected(std::uint32_t in_features, std::uint32_t out_features, Activation act,
                          std::string name) {
  LayerSpec l{FullyConnected{in_features, out_features}, act, std::move(name)};
  validate(l);
  return l;
}

void validate(const LayerSpec& layer) {
  auto bad = [&](const char* what) {
    throw ShapeError(std::string("invalid layer ") + describe(layer) + ": " + what);
  };
  std::visit(overloaded{
                 [&](const Convolution& c) {
                   if (c.kernel_size < 1) bad("kernel_size must be >= 1");
                   if (c.stride < 1) bad("stride must be >= 1");
                   if (c.in_channels < 1 || c.out_channels < 1) bad("channel counts must be >= 1");
                 },
                 [&](const MaxPool& p) {
                   if (p.window < 1) bad("window must be >= 1");
                   if (p.stride < 1) bad("stride must be >= 1");
                 },
                 [&](const FullyConnected& f) {
                   if (f.in_features < 1 || f.out_features < 1) bad("feature counts must be >= 1");
                 },
             },
             layer.kind);
}

std::string_view kind_name(const LayerSpec& layer) noexcept {
  return std::visit(overloaded{
                        [](const Convolution&) { return std::string_view("convolution"); },
                        [](const MaxPool&) { return std::string_view("max_pool"); },
                        [](const FullyConnected&) { return std::string_view("fully_connected"); },
                    },
                    layer.kind);
}

std::string describe(const LayerSpec& layer) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Convolution& c) {
                   os << "Conv(" << c.kernel_size << 'x' << c.kernel_size << ", " << c.in_channels
                      << "->" << c.out_channels << ", stride " << c.stride << ", pad "
                      << c.padding << ')';
                 },
                 [&](const MaxPool& p) {
                   os << "MaxPool(" << p.window << 'x' << p.window << ", stride " << p.stride
                      << ')';
                 },
                 [&](const FullyConnected& f) {
                   os << "FC(" << f.in_features << "->" << f.out_features << ')';
                 },
             },
             layer.kind);
  return os.str();
}

TensorShape output_shape(const LayerSpec& layer, const TensorShape& input) {
  validate(layer);
  return std::visit(
      overloaded{
          [&](const Convolution& c) -> TensorShape {
            const auto k = c.kernel_size;
            const std::string want = "(" + std::to_string(c.in_channels) + ",H,W) with H,W >= " +
                                     std::to_string(k > 2 * c.padding ? k - 2 * c.padding : 1);
            if (!input.spatial() || input.channels() != c.in_channels) mismatch(layer, want, input);
            if (input.height() + 2 * c.padding < k || input.width() + 2 * c.padding < k) {
              mismatch(layer, want, input);
            }
            return TensorShape({c.out_channels, pooled_extent(input.height(), c.padding, k, c.stride),
                                pooled_extent(input.width(), c.padding, k, c.stride)});
          },
          [&](const MaxPool& p) -> TensorShape {
            const std::string want = "(C,H,W) with H,W >= " + std::to_string(p.window);
            if (!input.spatial() || input.height() < p.window || input.width() < p.window) {
              mismatch(layer, want, input);
            }
            return TensorShape({input.channels(), pooled_extent(input.height(), 0, p.window, p.stride),
                                pooled_extent(input.width(), 0, p.window, p.stride)});
          },
          [&](const FullyConnected& f) -> TensorShape {
            if (input.elements() != f.in_features) {
              mismatch(layer, std::to_string(f.in_features) + " elements", input);
            }
            return TensorShape::flat(f.out_features);
          },
      },
      layer.kind);
}

std::uint64_t mac_count(const LayerSpec& layer, const TensorShape& input) {
  const TensorShape out = output_shape(layer, input);
  return std::visit(overloaded{
                        [&](const Convolution& c) -> std::uint64_t {
                          const std::uint64_t spatial =
                              std::uint64_t{out.height()} * out.width();
                          return spatial * c.kernel_size * c.kernel_size * c.in_channels *
                                 c.out_channels;
                        },
                        [&](const MaxPool& p) -> std::uint64_t {
                          return out.elements() * p.window * p.window;
                        },
                        [&](const FullyConnected& f) -> std::uint64_t {
                          return std::uint64_t{f.in_features} * f.out_features;
                        },
                    },
                    layer.kind);
}

ParameterCounts parameter_counts(const LayerSpec& layer) noexcept {
  return std::visit(overloaded{
                        [](const Convolution& c) {
                          return ParameterCounts{std::uint64_t{c.out_channels} * c.in_channels *
                                                     c.kernel_size * c.kernel_size,
                                                 c.out_channels};
                        },
                        [](const MaxPool&) { return ParameterCounts{}; },
                        [](const FullyConnected& f) {
                          return ParameterCounts{std::uint64_t{f.out_features} * f.in_features,
                                                 f.out_features};
                        },
                    },
                    layer.kind);
}

}  // namespace edgepipe::cnn
