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

#include "tnn/document.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "tnn/error.hpp"
#include "util.hpp"

namespace tnn {
namespace {

using nlohmann::json;

constexpr double kEdgeSlack = 1e-9;

bool is_letter(unsigned char c) {
  // Bytes of multi-byte UTF-8 sequences count as letters so accented words
  // stay alphabetic.
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_word_punct(unsigned char c) {
  switch (c) {
    case '.': case ',': case ':': case ';': case '\'': case '-':
    case '!': case '?': case '(': case ')': case '"':
      return true;
    default:
      return false;
  }
}

void check_geometry(const Token& t, const std::string& where) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kValidation, where + ": token '" + t.text + "' " + what);
  };
  if (t.text.empty()) fail("has empty text");
  for (double v : {t.x, t.y, t.width, t.height}) {
    if (!std::isfinite(v)) fail("has a non-finite coordinate");
  }
  if (t.x < 0.0 || t.x > 1.0) fail("has x outside [0,1]");
  if (t.y < 0.0 || t.y > 1.0) fail("has y outside [0,1]");
  if (t.width <= 0.0 || t.width > 1.0) fail("has width outside (0,1]");
  if (t.height <= 0.0 || t.height > 1.0) fail("has height outside (0,1]");
  if (t.x + t.width > 1.0 + kEdgeSlack) fail("extends past the right page edge");
  if (t.y + t.height > 1.0 + kEdgeSlack) fail("extends past the bottom page edge");
}

void check_names(const std::vector<std::string>& names, const Topology& topology, Layer layer,
                 const std::string& where, const char* field) {
  for (const auto& name : names) {
    if (!topology.index_of(layer, name)) {
      throw Error(ErrorCode::kValidation, where + ": labels." + field + " names unknown neuron '" +
                                              name + "'");
    }
  }
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kParse, where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParse, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kAlphabetic:
      return "alphabetic";
    case TokenKind::kNumeric:
      return "numeric";
    case TokenKind::kAlphanumeric:
      return "alphanumeric";
    case TokenKind::kSymbol:
      return "symbol";
  }
  return "symbol";
}

TokenKind token_kind(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "token_kind: empty text");
  bool letters = false;
  bool digits = false;
  bool separators_only = true;  // every non-digit is '.' or ','
  bool word_punct_only = true;  // every non-letter is word punctuation
  for (unsigned char c : text) {
    if (is_digit(c)) {
      digits = true;
      word_punct_only = false;
    } else if (is_letter(c)) {
      letters = true;
      separators_only = false;
    } else {
      if (c != '.' && c != ',') separators_only = false;
      if (!is_word_punct(c)) word_punct_only = false;
    }
  }
  if (letters && digits) return TokenKind::kAlphanumeric;
  if (digits && separators_only) return TokenKind::kNumeric;
  if (letters && word_punct_only) return TokenKind::kAlphabetic;
  return TokenKind::kSymbol;
}

Token make_token(std::string text, double x, double y, double width, double height) {
  Token t{std::move(text), x, y, width, height, TokenKind::kSymbol};
  check_geometry(t, "token");
  t.kind = token_kind(t.text);
  return t;
}

bool GroundTruth::has_structure(std::string_view name) const {
  return std::binary_search(structures.begin(), structures.end(), name);
}

bool GroundTruth::has_substructure(std::string_view name) const {
  return std::binary_search(substructures.begin(), substructures.end(), name);
}

void validate_document(const DocumentInstance& doc, const Topology& topology) {
  if (doc.id.empty()) throw Error(ErrorCode::kValidation, "document with empty id");
  const std::string where = "document '" + doc.id + "'";
  for (const auto& token : doc.tokens) {
    check_geometry(token, where);
    if (token.kind != token_kind(token.text)) {
      throw Error(ErrorCode::kValidation, where + ": token '" + token.text + "' has a stale kind");
    }
  }
  if (!doc.labels) return;
  const auto& labels = *doc.labels;
  if (!topology.index_of(Layer::kDocuments, labels.document_class)) {
    throw Error(ErrorCode::kValidation,
                where + ": labels.class names unknown class '" + labels.document_class + "'");
  }
  check_names(labels.structures, topology, Layer::kStructures, where, "structures");
  check_names(labels.substructures, topology, Layer::kSubstructures, where, "substructures");
}

Corpus parse_corpus(std::string_view json_text, const Topology& topology) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("corpus: malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("documents") || !root["documents"].is_array()) {
    throw Error(ErrorCode::kParse, "corpus: expected an object with a 'documents' array");
  }

  Corpus corpus;
  std::vector<std::string> ids;
  std::size_t position = 0;
  for (const auto& jdoc : root["documents"]) {
    const std::string at = "corpus: document #" + std::to_string(position++);
    if (!jdoc.is_object()) throw Error(ErrorCode::kParse, at + " is not an object");
    DocumentInstance doc;
    doc.id = field<std::string>(jdoc, "id", at);
    const std::string where = "document '" + doc.id + "'";
    const auto tokens = field<json>(jdoc, "tokens", where);
    if (!tokens.is_array()) throw Error(ErrorCode::kParse, where + ": 'tokens' is not an array");
    for (const auto& jt : tokens) {
      if (!jt.is_object()) throw Error(ErrorCode::kParse, where + ": token is not an object");
      Token t;
      t.text = field<std::string>(jt, "text", where);
      t.x = field<double>(jt, "x", where);
      t.y = field<double>(jt, "y", where);
      t.width = field<double>(jt, "w", where);
      t.height = field<double>(jt, "h", where);
      check_geometry(t, where);
      t.kind = token_kind(t.text);
      doc.tokens.push_back(std::move(t));
    }
    if (auto it = jdoc.find("labels"); it != jdoc.end() && !it->is_null()) {
      if (!it->is_object()) throw Error(ErrorCode::kParse, where + ": 'labels' is not an object");
      GroundTruth gt;
      gt.document_class = field<std::string>(*it, "class", where);
      gt.structures =
          sorted_unique(field<std::vector<std::string>>(*it, "structures", where));
      gt.substructures =
          sorted_unique(field<std::vector<std::string>>(*it, "substructures", where));
      doc.labels = std::move(gt);
    }
    validate_document(doc, topology);
    ids.push_back(doc.id);
    corpus.push_back(std::move(doc));
  }

  std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw Error(ErrorCode::kValidation, "corpus: duplicate document id '" + *dup + "'");
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const Topology& topology) {
  return parse_corpus(detail::read_file(path, "corpus"), topology);
}

std::string serialize_corpus(const Corpus& corpus) {
  json docs = json::array();
  for (const auto& doc : corpus) {
    json jdoc;
    jdoc["id"] = doc.id;
    json tokens = json::array();
    for (const auto& t : doc.tokens) {
      tokens.push_back({{"text", t.text}, {"x", t.x}, {"y", t.y}, {"w", t.width}, {"h", t.height}});
    }
    jdoc["tokens"] = std::move(tokens);
    if (doc.labels) {
      jdoc["labels"] = {{"class", doc.labels->document_class},
                        {"structures", doc.labels->structures},
                        {"substructures", doc.labels->substructures}};
    }
    docs.push_back(std::move(jdoc));
  }
  json root;
  root["documents"] = std::move(docs);
  return root.dump(1) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  detail::write_file(path, serialize_corpus(corpus), "corpus");
}

}  // namespace tnn
