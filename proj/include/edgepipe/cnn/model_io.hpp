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

#include <filesystem>
#include <string>

#include "edgepipe/cnn/model.hpp"

// Model description files are JSON:
//
//   {
//     "name": "lenet",
//     "input_shape": [1, 28, 28],
//     "layers": [
//       {"name": "conv1", "type": "convolution", "kernel_size": 5,
//        "in_channels": 1, "out_channels": 6, "stride": 1, "padding": 0,
//        "activation": "relu"},
//       {"name": "pool1", "type": "max_pool", "window": 2, "stride": 2,
//        "activation": "none"},
//       {"name": "ip1", "type": "fully_connected", "in_features": 120,
//        "out_features": 84, "activation": "relu"}
//     ]
//   }
//
// "stride", "padding" and "activation" are optional (1, 0, "none").

namespace edgepipe::cnn {

std::string model_to_json(const ModelGraph& model);
ModelGraph model_from_json(const std::string& text);

ModelGraph load_model(const std::filesystem::path& path);
void save_model(const ModelGraph& model, const std::filesystem::path& path);

}  // namespace edgepipe::cnn
