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

#include "edgepipe/cnn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace edgepipe::cnn {
namespace {

using nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const char* activation_name(Activation a) { return a == Activation::kReLU ? "relu" : "none"; }

Activation parse_activation(const std::string& s) {
  if (s == "relu") return Activation::kReLU;
  if (s == "none") return Activation::kNone;
  throw ParseError("unknown activation '" + s + "'");
}

std::uint32_t field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("layer is missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint32_t>();
}

std::uint32_t field_or(const ordered_json& j, const char* key, std::uint32_t fallback) {
  return j.contains(key) ? field(j, key) : fallback;
}

}  // namespace

std::string model_to_json(const ModelGraph& model) {
  ordered_json j;
  j["name"] = model.name();
  j["input_shape"] = model.input_shape().dims();
  auto layers = ordered_json::array();
  for (const auto& layer : model.layers()) {
    ordered_json l;
    l["name"] = layer.name;
    l["type"] = std::string(kind_name(layer));
    std::visit(overloaded{
                   [&](const Convolution& c) {
                     l["kernel_size"] = c.kernel_size;
                     l["in_channels"] = c.in_channels;
                     l["out_channels"] = c.out_channels;
                     l["stride"] = c.stride;
                     l["padding"] = c.padding;
                   },
                   [&](const MaxPool& p) {
                     l["window"] = p.window;
                     l["stride"] = p.stride;
                   },
                   [&](const FullyConnected& f) {
                     l["in_features"] = f.in_features;
                     l["out_features"] = f.out_features;
                   },
               },
               layer.kind);
    l["activation"] = activation_name(layer.activation);
    layers.push_back(std::move(l));
  }
  j["layers"] = std::move(layers);
  return j.dump(2) + "\n";
}

ModelGraph model_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const auto name = j.value("name", std::string("model"));
    if (!j.contains("input_shape") || !j.contains("layers")) {
      throw ParseError("model needs 'input_shape' and 'layers'");
    }
    TensorShape input(j.at("input_shape").get<std::vector<std::uint32_t>>());
    std::vector<LayerSpec> layers;
    for (const auto& l : j.at("layers")) {
      const auto type = l.at("type").get<std::string>();
      LayerSpec spec;
      spec.name = l.value("name", std::string());
      spec.activation = parse_activation(l.value("activation", std::string("none")));
      if (type == "convolution") {
        spec.kind = Convolution{field(l, "kernel_size"), field(l, "in_channels"),
                                field(l, "out_channels"), field_or(l, "stride", 1),
                                field_or(l, "padding", 0)};
      } else if (type == "max_pool") {
        spec.kind = MaxPool{field(l, "window"), field_or(l, "stride", 1)};
      } else if (type == "fully_connected") {
        spec.kind = FullyConnected{field(l, "in_features"), field(l, "out_features")};
      } else {
        throw ParseError("unknown layer type '" + type + "'");
      }
      validate(spec);
      layers.push_back(std::move(spec));
    }
    return ModelGraph(name, std::move(input), std::move(layers));
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

ModelGraph load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

void save_model(const ModelGraph& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << model_to_json(model);
}

}  // namespace edgepipe::cnn
