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
#include <filesystem>
#include <vector>

#include "edgepipe/cnn/tensor.hpp"

namespace edgepipe::runtime {

/// n images with values uniform in [0, 1), reproducible from the seed.
std::vector<cnn::Tensor> synthetic_images(const cnn::TensorShape& shape, std::size_t n,
                                          std::uint64_t seed);

/// Every *.pgm (binary P5, 8-bit, scaled to [0, 1]) and *.f32 (raw float32
/// LE) file in `dir`, in file name order. Throws ParseError for unreadable
/// files and ShapeError for images of the wrong size.
std::vector<cnn::Tensor> load_images(const std::filesystem::path& dir,
                                     const cnn::TensorShape& shape);

}  // namespace edgepipe::runtime
