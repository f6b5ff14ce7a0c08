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

// Topology/config file: layers, links, element extractors and the
// parameters of training and recognition.

#ifndef TNN_CONFIG_HPP_
#define TNN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "tnn/features.hpp"
#include "tnn/network.hpp"
#include "tnn/recognizer.hpp"
#include "tnn/topology.hpp"

namespace tnn {

struct Config {
  Topology topology = Topology::default_topology();
  FeatureExtractor features = FeatureExtractor::default_extractors();
  Hyperparams tnn;
  Hyperparams mlp{0.5, 0.01, 10000};
  RecognizeParams recognize;
  std::uint64_t seed = 1;

  bool operator==(const Config&) const = default;
};

// Missing sections fall back to the defaults above. Throws Error(kParse) on
// malformed JSON and Error(kValidation) on inconsistent content.
Config parse_config(std::string_view json_text);
Config load_config(const std::filesystem::path& path);
std::string serialize_config(const Config& config);

}  // namespace tnn

#endif  // TNN_CONFIG_HPP_
