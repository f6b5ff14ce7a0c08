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

// Token-layout documents and the labeled corpus file.
//
// A document is a bag of text tokens positioned in page-fraction coordinates
// with the origin at the top-left corner. Ground truth, when present, names
// the document class and the structure/substructure neurons it contains.

#ifndef TNN_DOCUMENT_HPP_
#define TNN_DOCUMENT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/topology.hpp"

namespace tnn {

enum class TokenKind { kAlphabetic, kNumeric, kAlphanumeric, kSymbol };

std::string_view to_string(TokenKind kind);

// Digits with '.'/',' separators are numeric. Letters, optionally with word
// punctuation such as "Mr." or "Total:", are alphabetic. Anything holding both
// letters and digits is alphanumeric. The rest is a symbol.
// Throws Error(kInvalidArgument) on an empty string.
TokenKind token_kind(std::string_view text);

struct Token {
  std::string text;
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  TokenKind kind = TokenKind::kSymbol;

  double right() const { return x + width; }
  double bottom() const { return y + height; }
  double center_x() const { return x + 0.5 * width; }

  bool operator==(const Token&) const = default;
};

// Builds a token with its kind derived from the text. Throws
// Error(kValidation) when the geometry leaves the page.
Token make_token(std::string text, double x, double y, double width, double height);

struct GroundTruth {
  std::string document_class;
  std::vector<std::string> structures;     // sorted, unique
  std::vector<std::string> substructures;  // sorted, unique

  bool has_structure(std::string_view name) const;
  bool has_substructure(std::string_view name) const;

  bool operator==(const GroundTruth&) const = default;
};

struct DocumentInstance {
  std::string id;
  std::vector<Token> tokens;
  std::optional<GroundTruth> labels;

  bool operator==(const DocumentInstance&) const = default;
};

using Corpus = std::vector<DocumentInstance>;

// Checks token geometry and that every label names a neuron of the topology.
void validate_document(const DocumentInstance& doc, const Topology& topology);

Corpus parse_corpus(std::string_view json_text, const Topology& topology);
Corpus load_corpus(const std::filesystem::path& path, const Topology& topology);

std::string serialize_corpus(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace tnn

#endif  // TNN_DOCUMENT_HPP_
