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

#include "json_codec.hpp"

#include <algorithm>

#include "tnn/error.hpp"

namespace tnn::codec {

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, what + ": malformed JSON: " + e.what());
  }
}

json encode(const Topology& topology) {
  json links = json::array();
  for (const auto& link : topology.links()) links.push_back({link.from, link.to});
  return {{"elements", topology.elements()},
          {"substructures", topology.substructures()},
          {"structures", topology.structures()},
          {"documents", topology.documents()},
          {"links", std::move(links)}};
}

Topology decode_topology(const json& j) {
  const std::string where = "topology";
  if (!j.is_object()) throw Error(ErrorCode::kParse, "topology: expected an object");
  std::vector<Link> links;
  for (const auto& pair : get<json>(j, "links", where)) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw Error(ErrorCode::kParse, "topology: each link must be a [from, to] pair of names");
    }
    links.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
  }
  return Topology(get<std::vector<std::string>>(j, "elements", where),
                  get<std::vector<std::string>>(j, "substructures", where),
                  get<std::vector<std::string>>(j, "structures", where),
                  get<std::vector<std::string>>(j, "documents", where), std::move(links));
}

json encode(const FeatureExtractor& features) {
  const auto& p = features.params();
  json params = {{"align_tolerance", p.align_tolerance},
                 {"row_tolerance", p.row_tolerance},
                 {"min_group", p.min_group},
                 {"right_region", p.right_region},
                 {"middle_band_lo", p.middle_band_lo},
                 {"middle_band_hi", p.middle_band_hi},
                 {"left_band", p.left_band},
                 {"bottom_band", p.bottom_band},
                 {"isolation_gap", p.isolation_gap},
                 {"isolated_max_tokens", p.isolated_max_tokens},
                 {"product_tolerance", p.product_tolerance},
                 {"text_row_min_tokens", p.text_row_min_tokens},
                 {"text_min_rows", p.text_min_rows},
                 {"text_row_gap", p.text_row_gap},
                 {"justify_fraction", p.justify_fraction},
                 {"code_max_length", p.code_max_length}};
  json elements = json::array();
  for (const auto& e : features.extractors()) {
    elements.push_back({{"name", e.element_name},
                        {"extractor", std::string(to_string(e.kind))},
                        {"levels", e.max_level()}});
  }
  return {{"params", std::move(params)}, {"elements", std::move(elements)}};
}

FeatureExtractor decode_features(const json& j) {
  const std::string where = "extractors";
  ExtractorParams p;
  if (auto it = j.find("params"); it != j.end()) {
    auto read = [&](const char* key, auto& field) {
      if (auto f = it->find(key); f != it->end()) {
        try {
          field = f->get<std::decay_t<decltype(field)>>();
        } catch (const json::exception&) {
          throw Error(ErrorCode::kParse,
                      std::string("extractors.params: field '") + key + "' has the wrong type");
        }
      }
    };
    read("align_tolerance", p.align_tolerance);
    read("row_tolerance", p.row_tolerance);
    read("min_group", p.min_group);
    read("right_region", p.right_region);
    read("middle_band_lo", p.middle_band_lo);
    read("middle_band_hi", p.middle_band_hi);
    read("left_band", p.left_band);
    read("bottom_band", p.bottom_band);
    read("isolation_gap", p.isolation_gap);
    read("isolated_max_tokens", p.isolated_max_tokens);
    read("product_tolerance", p.product_tolerance);
    read("text_row_min_tokens", p.text_row_min_tokens);
    read("text_min_rows", p.text_min_rows);
    read("text_row_gap", p.text_row_gap);
    read("justify_fraction", p.justify_fraction);
    read("code_max_length", p.code_max_length);
  }
  std::vector<ElementExtractor> extractors;
  for (const auto& e : get<json>(j, "elements", where)) {
    const auto name = get<std::string>(e, "name", where);
    const auto kind_name = get<std::string>(e, "extractor", "element '" + name + "'");
    const auto kind = extractor_kind_from_string(kind_name);
    if (!kind) {
      throw Error(ErrorCode::kValidation,
                  "element '" + name + "' uses unknown extractor '" + kind_name + "'");
    }
    const int levels = e.contains("levels") ? get<int>(e, "levels", name) : native_levels(*kind);
    if (levels > native_levels(*kind)) {
      throw Error(ErrorCode::kValidation, "element '" + name + "' asks for " +
                                              std::to_string(levels) + " levels; " + kind_name +
                                              " has " + std::to_string(native_levels(*kind)));
    }
    extractors.push_back(make_element_extractor(name, *kind, levels));
  }
  return FeatureExtractor(std::move(extractors), p);
}

json encode(const Hyperparams& hyper) {
  return {{"mu", hyper.mu}, {"epsilon", hyper.epsilon}, {"max_epochs", hyper.max_epochs}};
}

Hyperparams decode_hyperparams(const json& j, const Hyperparams& defaults) {
  Hyperparams h = defaults;
  const std::string where = "hyperparams";
  if (j.contains("mu")) h.mu = get<double>(j, "mu", where);
  if (j.contains("epsilon")) h.epsilon = get<double>(j, "epsilon", where);
  if (j.contains("max_epochs")) h.max_epochs = get<std::size_t>(j, "max_epochs", where);
  if (!(h.mu > 0.0) || !(h.epsilon >= 0.0) || h.max_epochs == 0) {
    throw Error(ErrorCode::kValidation, "hyperparams: need mu > 0, epsilon >= 0, max_epochs > 0");
  }
  return h;
}

json encode(const RecognizeParams& params) {
  return {{"tau_accept", params.tau_accept},     {"tau_margin", params.tau_margin},
          {"tau_struct", params.tau_struct},     {"max_passes", params.max_passes},
          {"blame_budget", params.blame_budget}};
}

RecognizeParams decode_recognize(const json& j, const RecognizeParams& defaults) {
  RecognizeParams p = defaults;
  const std::string where = "recognize";
  if (j.contains("tau_accept")) p.tau_accept = get<double>(j, "tau_accept", where);
  if (j.contains("tau_margin")) p.tau_margin = get<double>(j, "tau_margin", where);
  if (j.contains("tau_struct")) p.tau_struct = get<double>(j, "tau_struct", where);
  if (j.contains("max_passes")) p.max_passes = get<std::size_t>(j, "max_passes", where);
  if (j.contains("blame_budget")) p.blame_budget = get<std::size_t>(j, "blame_budget", where);
  if (p.max_passes == 0) throw Error(ErrorCode::kValidation, "recognize: max_passes must be >= 1");
  return p;
}

json encode(const TrainingStats& stats) {
  return {{"samples", stats.samples},
          {"epochs", stats.epochs},
          {"update_passes", stats.update_passes},
          {"weight_updates", stats.weight_updates},
          {"final_mse", stats.final_mse},
          {"converged", stats.converged}};
}

TrainingStats decode_stats(const json& j) {
  const std::string where = "training stats";
  TrainingStats s;
  s.samples = get<std::size_t>(j, "samples", where);
  s.epochs = get<std::size_t>(j, "epochs", where);
  s.update_passes = get<std::uint64_t>(j, "update_passes", where);
  s.weight_updates = get<std::uint64_t>(j, "weight_updates", where);
  s.final_mse = get<double>(j, "final_mse", where);
  s.converged = get<bool>(j, "converged", where);
  return s;
}

json encode(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix decode_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw Error(ErrorCode::kValidation, what + ": expected " + std::to_string(rows) +
                                            " weight rows, found " +
                                            std::to_string(j.is_array() ? j.size() : 0));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error(ErrorCode::kValidation,
                  what + ": weight row " + std::to_string(r) + " does not have " +
                      std::to_string(cols) + " columns");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw Error(ErrorCode::kParse, what + ": non-numeric weight");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

void check_envelope(const json& j, std::string_view kind) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, std::string(kind) + ": expected a JSON object");
  auto version = j.find("format_version");
  if (version == j.end() || !version->is_number_integer()) {
    throw Error(ErrorCode::kParse, std::string(kind) + ": missing format_version");
  }
  if (version->get<int>() != kFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                std::string(kind) + ": format_version " + std::to_string(version->get<int>()) +
                    " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  auto k = j.find("kind");
  if (k == j.end() || !k->is_string() || k->get<std::string>() != kind) {
    throw Error(ErrorCode::kValidation, "expected kind '" + std::string(kind) + "'");
  }
}

}  // namespace tnn::codec
