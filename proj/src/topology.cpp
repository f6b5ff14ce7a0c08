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

#include "tnn/topology.hpp"

#include <algorithm>
#include <set>

#include "tnn/error.hpp"

namespace tnn {
namespace {

void check_unique(const std::vector<std::string>& names, Layer layer) {
  std::set<std::string_view> seen;
  for (const auto& name : names) {
    if (name.empty()) {
      throw Error(ErrorCode::kValidation,
                  "topology: empty neuron name in layer " + std::string(to_string(layer)));
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kValidation, "topology: duplicate neuron '" + name + "' in layer " +
                                              std::string(to_string(layer)));
    }
  }
}

std::vector<Link> fan_in(const std::string& to, std::initializer_list<const char*> from) {
  std::vector<Link> links;
  for (const char* f : from) links.push_back({f, to});
  return links;
}

}  // namespace

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::kElements:
      return "elements";
    case Layer::kSubstructures:
      return "substructures";
    case Layer::kStructures:
      return "structures";
    case Layer::kDocuments:
      return "documents";
  }
  return "unknown";
}

Topology::Topology(std::vector<std::string> elements, std::vector<std::string> substructures,
                   std::vector<std::string> structures, std::vector<std::string> documents,
                   std::vector<Link> links)
    : layers_{std::move(elements), std::move(substructures), std::move(structures),
              std::move(documents)},
      links_(std::move(links)) {
  for (std::size_t l = 0; l < kLayerCount; ++l) {
    const auto layer = static_cast<Layer>(l);
    if (layers_[l].empty()) {
      throw Error(ErrorCode::kValidation,
                  "topology: layer " + std::string(to_string(layer)) + " is empty");
    }
    check_unique(layers_[l], layer);
  }

  std::sort(links_.begin(), links_.end());
  if (std::adjacent_find(links_.begin(), links_.end()) != links_.end()) {
    throw Error(ErrorCode::kValidation, "topology: duplicate link");
  }

  for (std::size_t l = 0; l + 1 < kLayerCount; ++l) {
    masks_[l].assign(layers_[l].size() * layers_[l + 1].size(), 0);
  }
  for (const auto& link : links_) {
    bool placed = false;
    for (std::size_t l = 0; l + 1 < kLayerCount && !placed; ++l) {
      auto from = index_of(static_cast<Layer>(l), link.from);
      auto to = index_of(static_cast<Layer>(l + 1), link.to);
      if (from && to) {
        masks_[l][*from * layers_[l + 1].size() + *to] = 1;
        placed = true;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::kValidation, "topology: link " + link.from + " -> " + link.to +
                                              " does not join adjacent layers");
    }
  }

  for (std::size_t l = 0; l + 1 < kLayerCount; ++l) {
    const std::size_t rows = layers_[l].size();
    const std::size_t cols = layers_[l + 1].size();
    for (std::size_t r = 0; r < rows; ++r) {
      bool any = false;
      for (std::size_t c = 0; c < cols; ++c) any = any || masks_[l][r * cols + c];
      if (!any) {
        throw Error(ErrorCode::kValidation,
                    "topology: neuron '" + layers_[l][r] + "' has no outgoing link");
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      bool any = false;
      for (std::size_t r = 0; r < rows; ++r) any = any || masks_[l][r * cols + c];
      if (!any) {
        throw Error(ErrorCode::kValidation,
                    "topology: neuron '" + layers_[l + 1][c] + "' has no incoming link");
      }
    }
  }
}

Topology Topology::default_topology() {
  std::vector<std::string> elements = {
      "amount_area",      "designation_zone", "code_area",  "vertical_alignment",
      "horizontal_alignment", "keywords_total", "keywords_address", "text_block",
      "date_indicator",   "isolated_block"};
  std::vector<std::string> substructures = {"numeric_column_group", "totals_line",
                                            "address_block",        "date_line",
                                            "paragraph",            "tabular_grid",
                                            "signature_block"};
  std::vector<std::string> structures = {"invoice_body", "table",       "total", "address",
                                         "signature",    "letter_body", "header"};
  std::vector<std::string> documents = {"invoice", "form", "letter"};

  std::vector<Link> links;
  auto add = [&links](std::vector<Link> more) {
    links.insert(links.end(), more.begin(), more.end());
  };
  add(fan_in("numeric_column_group",
             {"amount_area", "code_area", "designation_zone", "vertical_alignment"}));
  add(fan_in("totals_line", {"keywords_total", "amount_area"}));
  add(fan_in("address_block", {"keywords_address"}));
  add(fan_in("date_line", {"date_indicator"}));
  add(fan_in("paragraph", {"text_block", "vertical_alignment", "horizontal_alignment"}));
  add(fan_in("tabular_grid", {"horizontal_alignment", "vertical_alignment", "code_area",
                              "designation_zone", "amount_area", "text_block"}));
  add(fan_in("signature_block", {"isolated_block"}));

  add(fan_in("invoice_body", {"numeric_column_group", "tabular_grid", "totals_line"}));
  add(fan_in("table", {"tabular_grid", "numeric_column_group"}));
  add(fan_in("total", {"totals_line"}));
  add(fan_in("address", {"address_block"}));
  add(fan_in("signature", {"signature_block"}));
  add(fan_in("letter_body", {"paragraph"}));
  add(fan_in("header", {"date_line", "address_block"}));

  // Every structure votes for (or against) every class.
  for (const auto& doc : documents) {
    for (const auto& s : structures) links.push_back({s, doc});
  }

  return Topology(std::move(elements), std::move(substructures), std::move(structures),
                  std::move(documents), std::move(links));
}

std::optional<std::size_t> Topology::index_of(Layer layer, std::string_view name) const {
  const auto& layer_names = names(layer);
  auto it = std::find(layer_names.begin(), layer_names.end(), name);
  if (it == layer_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - layer_names.begin());
}

const std::vector<unsigned char>& Topology::mask(Layer from) const {
  const auto l = static_cast<std::size_t>(from);
  if (l + 1 >= kLayerCount) {
    throw Error(ErrorCode::kInvalidArgument, "topology: the document layer has no outgoing mask");
  }
  return masks_[l];
}

bool Topology::linked(Layer from, std::size_t input, std::size_t output) const {
  const auto l = static_cast<std::size_t>(from);
  return mask(from)[input * layers_[l + 1].size() + output] != 0;
}

std::size_t Topology::link_count(Layer from) const {
  const auto& m = mask(from);
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), 1));
}

}  // namespace tnn
