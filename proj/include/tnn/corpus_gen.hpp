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

// Seeded generator of labeled invoice, form and letter layouts.

#ifndef TNN_CORPUS_GEN_HPP_
#define TNN_CORPUS_GEN_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "tnn/document.hpp"

namespace tnn {

struct NoiseSpec {
  double jitter = 0.0;        // std-dev of token position offsets
  double drop_rate = 0.0;     // chance an optional structure is left out
  double distort_rate = 0.0;  // chance a keyword token is misspelled
  // Per-structure drop probabilities; these replace drop_rate for the named
  // structure and may also target the class-defining ones.
  std::map<std::string, double> drop_overrides;
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t invoices = 0;
  std::size_t forms = 0;
  std::size_t letters = 0;
  NoiseSpec noise;
  std::string id_prefix = "doc";
};

// Documents come out in a seeded shuffled class order. Each document draws
// from its own stream derived from (seed, index). Labels list exactly the
// structures and substructures that were placed. Throws
// Error(kInvalidArgument) when a probability leaves [0, 1].
Corpus generate(const GenSpec& spec);

}  // namespace tnn

#endif  // TNN_CORPUS_GEN_HPP_
