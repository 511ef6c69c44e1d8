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

#include "edgepipe/cnn/lenet.hpp"

namespace edgepipe::cnn {

Lenet build_lenet() {
  using A = Activation;
  std::vector<LayerSpec> layers{
      conv(5, 1, 6, A::kReLU, 1, 0, "conv1"),
      max_pool(2, 2, "pool1"),
      conv(5, 6, 16, A::kReLU, 1, 0, "conv2"),
      max_pool(2, 2, "pool2"),
      fully_connected(256, 120, A::kReLU, "conv3"),
      fully_connected(120, 84, A::kReLU, "ip1"),
      fully_connected(84, 10, A::kNone, "ip2"),
  };
  return Lenet{ModelGraph("lenet", TensorShape({1, 28, 28}), std::move(layers)), LenetReference{}};
}

}  // namespace edgepipe::cnn
