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

// JSON encoding shared by the config, model and report files.

#ifndef TNN_SRC_JSON_CODEC_HPP_
#define TNN_SRC_JSON_CODEC_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "tnn/error.hpp"
#include "tnn/features.hpp"
#include "tnn/network.hpp"
#include "tnn/recognizer.hpp"
#include "tnn/topology.hpp"

namespace tnn::codec {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

json parse_json(std::string_view text, const std::string& what);

json encode(const Topology& topology);
Topology decode_topology(const json& j);

json encode(const FeatureExtractor& features);
FeatureExtractor decode_features(const json& j);

json encode(const Hyperparams& hyper);
Hyperparams decode_hyperparams(const json& j, const Hyperparams& defaults);

json encode(const RecognizeParams& params);
RecognizeParams decode_recognize(const json& j, const RecognizeParams& defaults);

json encode(const TrainingStats& stats);
TrainingStats decode_stats(const json& j);

json encode(const Matrix& m);
Matrix decode_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& what);

// Checks the format_version and kind fields of a model envelope.
void check_envelope(const json& j, std::string_view kind);

// Typed access that reports a parse error naming the missing field.
template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::kParse, where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParse, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace tnn::codec

#endif  // TNN_SRC_JSON_CODEC_HPP_
