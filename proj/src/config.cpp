// Copyright 2026 The TNN Document Recognition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tnn/config.hpp"

#include "json_codec.hpp"
#include "tnn/error.hpp"
#include "util.hpp"

namespace tnn {

Config parse_config(std::string_view json_text) {
  using codec::json;
  const json root = codec::parse_json(json_text, "config");
  if (!root.is_object()) throw Error(ErrorCode::kParse, "config: expected a JSON object");
  Config config;
  if (auto it = root.find("topology"); it != root.end()) {
    config.topology = codec::decode_topology(*it);
  }
  if (auto it = root.find("extractors"); it != root.end()) {
    config.features = codec::decode_features(*it);
  }
  if (auto it = root.find("tnn"); it != root.end()) {
    config.tnn = codec::decode_hyperparams(*it, config.tnn);
  }
  if (auto it = root.find("mlp"); it != root.end()) {
    config.mlp = codec::decode_hyperparams(*it, config.mlp);
  }
  if (auto it = root.find("recognize"); it != root.end()) {
    config.recognize = codec::decode_recognize(*it, config.recognize);
  }
  if (root.contains("seed")) config.seed = codec::get<std::uint64_t>(root, "seed", "config");
  // Every element neuron needs an extractor.
  (void)make_tnn(config.topology, config.features, config.tnn, config.seed);
  return config;
}

Config load_config(const std::filesystem::path& path) {
  return parse_config(detail::read_file(path, "config"));
}

std::string serialize_config(const Config& config) {
  const codec::json root = {{"topology", codec::encode(config.topology)},
                            {"extractors", codec::encode(config.features)},
                            {"tnn", codec::encode(config.tnn)},
                            {"mlp", codec::encode(config.mlp)},
                            {"recognize", codec::encode(config.recognize)},
                            {"seed", config.seed}};
  return root.dump(2);
}

}  // namespace tnn
