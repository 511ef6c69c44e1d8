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

#include <array>
#include <cstdint>
#include <string_view>

#include "edgepipe/cnn/model.hpp"

namespace edgepipe::cnn {

/// Per-layer values as printed in the LeNet MAC/output-size table, kept
/// verbatim. The pooling rows (3460, 1020) differ from the direct
/// window-comparison count (3456, 1024); everything else matches exactly.
struct LenetReference {
  static constexpr std::size_t kLayers = 7;
  std::array<std::string_view, kLayers> numerals{"I", "II", "III", "IV", "V", "VI", "VII"};
  std::array<std::string_view, kLayers> type_labels{
      "Convolution", "Max Pooling", "Convolution", "Max Pooling",
      "Convolution", "Fully Connected", "Fully Connected"};
  std::array<std::uint64_t, kLayers> macs{86400, 3460, 153600, 1020, 30720, 10080, 840};
  std::array<std::uint64_t, kLayers> output_sizes{3456, 864, 1024, 256, 120, 84, 10};
};

struct Lenet {
  ModelGraph model;
  LenetReference reference;
};

/// conv1 5x5 1->6, pool1 2x2/2, conv2 5x5 6->16, pool2 2x2/2, conv3 256->120,
/// ip1 120->84, ip2 84->10 on a (1,28,28) input. conv3 is labelled a
/// convolution in the reference table but collapses the 4x4 map completely,
/// so it is built as a dense 256->120 layer (same MACs, same output).
Lenet build_lenet();

}  // namespace edgepipe::cnn
