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

#include "tnn/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "tnn/error.hpp"

namespace tnn {
namespace {

using nlohmann::ordered_json;

// Class indices ordered by activation, highest first; ties keep layer order.
std::vector<std::size_t> ranked(const std::vector<double>& activations) {
  std::vector<std::size_t> order(activations.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return activations[a] > activations[b];
  });
  return order;
}

ordered_json named(const std::vector<std::string>& names, const std::vector<double>& values) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) out[names[i]] = values[i];
  return out;
}

}  // namespace

std::string_view to_string(RecognitionStatus status) {
  return status == RecognitionStatus::kRecognized ? "recognized" : "rejected";
}

std::vector<double> blame_scores(const ActivationTrace& trace, const TnnModel& model,
                                 const std::vector<std::size_t>& top_classes) {
  const auto& w1 = model.to_substructures;
  const auto& w2 = model.to_structures;
  const auto& w3 = model.to_documents;

  // Summed |W| products from each neuron down the paths to the top classes.
  std::vector<double> to_class(w3.input_size(), 0.0);
  for (std::size_t t = 0; t < w3.input_size(); ++t) {
    for (std::size_t d : top_classes) {
      if (w3.linked(t, d)) to_class[t] += std::abs(w3.weights(t, d));
    }
  }
  std::vector<double> from_sub(w2.input_size(), 0.0);
  for (std::size_t s = 0; s < w2.input_size(); ++s) {
    for (std::size_t t = 0; t < w2.output_size(); ++t) {
      if (w2.linked(s, t)) from_sub[s] += std::abs(w2.weights(s, t)) * to_class[t];
    }
  }
  std::vector<double> scores(w1.input_size(), 0.0);
  for (std::size_t e = 0; e < w1.input_size(); ++e) {
    double path = 0.0;
    for (std::size_t s = 0; s < w1.output_size(); ++s) {
      if (w1.linked(e, s)) path += std::abs(w1.weights(e, s)) * from_sub[s];
    }
    const double uncertainty = 1.0 - std::abs(2.0 * trace.elements.at(e) - 1.0);
    scores[e] = uncertainty * path;
  }
  return scores;
}

std::vector<std::string> blame_elements(const ActivationTrace& trace, const TnnModel& model,
                                        const std::vector<std::size_t>& top_classes,
                                        const std::vector<int>& current_levels,
                                        std::size_t budget) {
  const auto scores = blame_scores(trace, model, top_classes);
  const auto& extractors = model.features.extractors();
  std::vector<std::size_t> candidates;
  for (std::size_t e = 0; e < scores.size(); ++e) {
    if (scores[e] > 0.0 && current_levels.at(e) < extractors[e].max_level()) {
      candidates.push_back(e);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  if (candidates.size() > budget) candidates.resize(budget);
  std::vector<std::string> names;
  for (std::size_t e : candidates) names.push_back(model.topology.elements()[e]);
  return names;
}

std::vector<ExtractedStructure> extract_structures(const ActivationTrace& trace,
                                                   const TnnModel& model,
                                                   std::optional<std::size_t> winning_class,
                                                   double tau_struct) {
  std::vector<ExtractedStructure> out;
  const auto& names = model.topology.structures();
  const auto& votes = model.to_documents;
  for (std::size_t t = 0; t < names.size(); ++t) {
    const double a = trace.structures.at(t);
    if (a < tau_struct) continue;
    ExtractedStructure s{names[t], a, std::nullopt};
    if (winning_class) {
      s.linked_to_winner = votes.linked(t, *winning_class) && votes.weights(t, *winning_class) > 0.0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

RecognitionResult recognize(const TnnModel& model, const DocumentInstance& doc,
                            const RecognizeParams& params) {
  if (model.features.element_names() != model.topology.elements()) {
    throw Error(ErrorCode::kTopologyMismatch,
                "recognize: extractors and model topology disagree on the element layer");
  }
  if (params.max_passes == 0) {
    throw Error(ErrorCode::kInvalidArgument, "recognize: max_passes must be at least 1");
  }

  const std::size_t n = model.topology.elements().size();
  std::vector<int> levels(n, 1);
  std::vector<double> values(n);
  for (std::size_t e = 0; e < n; ++e) values[e] = model.features.extract(e, doc, 1).value;

  RecognitionResult result;
  bool accepted = false;
  std::vector<std::size_t> order;
  while (true) {
    PassRecord pass{levels, forward_tnn(model, std::span<const double>(values)), {}};
    const auto& classes = pass.trace.documents;
    order = ranked(classes);
    result.confidence = classes[order[0]];
    result.margin = classes[order[0]] - (order.size() > 1 ? classes[order[1]] : 0.0);
    accepted = result.confidence >= params.tau_accept && result.margin >= params.tau_margin;
    result.passes.push_back(std::move(pass));
    if (accepted || result.passes.size() >= params.max_passes) break;

    std::vector<std::size_t> top(order.begin(),
                                 order.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(2, order.size())));
    auto blamed = blame_elements(result.passes.back().trace, model, top, levels,
                                 params.blame_budget);
    if (blamed.empty()) break;
    for (const auto& name : blamed) {
      const std::size_t e = *model.topology.index_of(Layer::kElements, name);
      ++levels[e];
      values[e] = model.features.extract(e, doc, levels[e]).value;
    }
    result.passes.back().blamed = std::move(blamed);
  }

  result.top_class = model.topology.documents()[order[0]];
  result.status = accepted ? RecognitionStatus::kRecognized : RecognitionStatus::kRejected;
  std::optional<std::size_t> winner;
  if (accepted) {
    winner = order[0];
    result.winning_class = result.top_class;
  }
  result.structures =
      extract_structures(result.passes.back().trace, model, winner, params.tau_struct);
  return result;
}

std::string serialize_result(const RecognitionResult& result, const TnnModel& model) {
  const auto& topo = model.topology;
  ordered_json structures = ordered_json::array();
  for (const auto& s : result.structures) {
    ordered_json js = {{"name", s.name}, {"activation", s.activation}};
    js["linked_to_winner"] = s.linked_to_winner ? ordered_json(*s.linked_to_winner) : nullptr;
    structures.push_back(std::move(js));
  }
  ordered_json passes = ordered_json::array();
  for (std::size_t p = 0; p < result.passes.size(); ++p) {
    const auto& pass = result.passes[p];
    ordered_json levels = ordered_json::object();
    for (std::size_t e = 0; e < topo.elements().size(); ++e) {
      levels[topo.elements()[e]] = pass.levels[e];
    }
    passes.push_back({{"pass", p + 1},
                      {"levels", std::move(levels)},
                      {"elements", named(topo.elements(), pass.trace.elements)},
                      {"substructures", named(topo.substructures(), pass.trace.substructures)},
                      {"structures", named(topo.structures(), pass.trace.structures)},
                      {"documents", named(topo.documents(), pass.trace.documents)},
                      {"blamed", pass.blamed}});
  }
  ordered_json root;
  root["status"] = std::string(to_string(result.status));
  root["winning_class"] =
      result.winning_class ? ordered_json(*result.winning_class) : ordered_json(nullptr);
  root["top_class"] = result.top_class;
  root["confidence"] = result.confidence;
  root["margin"] = result.margin;
  root["structures"] = std::move(structures);
  root["passes"] = std::move(passes);
  return root.dump(2);
}

}  // namespace tnn
