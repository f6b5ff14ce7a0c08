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

// Named neurons of the four-layer transparent network and the links that
// join adjacent layers.

#ifndef TNN_TOPOLOGY_HPP_
#define TNN_TOPOLOGY_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tnn {

enum class Layer { kElements = 0, kSubstructures = 1, kStructures = 2, kDocuments = 3 };

inline constexpr std::size_t kLayerCount = 4;

std::string_view to_string(Layer layer);

struct Link {
  std::string from;
  std::string to;

  auto operator<=>(const Link&) const = default;
};

class Topology {
 public:
  // Throws Error(kValidation) when a name repeats inside a layer, a link does
  // not join adjacent layers, or a neuron is left without the incoming or
  // outgoing link its position requires.
  Topology(std::vector<std::string> elements, std::vector<std::string> substructures,
           std::vector<std::string> structures, std::vector<std::string> documents,
           std::vector<Link> links);

  // Ten layout elements, seven substructures, the seven structures scored by
  // the benchmark tables and the three administrative document classes.
  static Topology default_topology();

  const std::vector<std::string>& names(Layer layer) const {
    return layers_[static_cast<std::size_t>(layer)];
  }
  const std::vector<std::string>& elements() const { return names(Layer::kElements); }
  const std::vector<std::string>& substructures() const { return names(Layer::kSubstructures); }
  const std::vector<std::string>& structures() const { return names(Layer::kStructures); }
  const std::vector<std::string>& documents() const { return names(Layer::kDocuments); }

  // Links sorted by (from, to).
  const std::vector<Link>& links() const { return links_; }

  std::optional<std::size_t> index_of(Layer layer, std::string_view name) const;

  // Row-major mask of size names(from) x names(from + 1); 1 where linked.
  const std::vector<unsigned char>& mask(Layer from) const;

  bool linked(Layer from, std::size_t input, std::size_t output) const;

  std::size_t link_count(Layer from) const;

  bool operator==(const Topology& other) const {
    return layers_ == other.layers_ && links_ == other.links_;
  }

 private:
  std::array<std::vector<std::string>, kLayerCount> layers_;
  std::vector<Link> links_;
  std::array<std::vector<unsigned char>, kLayerCount - 1> masks_;
};

}  // namespace tnn

#endif  // TNN_TOPOLOGY_HPP_
