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

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tnn/corpus_gen.hpp"
#include "tnn/error.hpp"
#include "tnn/features.hpp"

using tnn::ExtractorKind;
using tnn::testing::doc_of;
using tnn::testing::tok;

namespace {

double value(ExtractorKind kind, const tnn::DocumentInstance& doc, int level) {
  return tnn::run_extractor(kind, doc, level, tnn::ExtractorParams{}).value;
}

// Invoice-style rows: quantity at 0.55, price at 0.68, amount at 0.82.
tnn::DocumentInstance product_rows(const std::vector<std::array<std::string, 3>>& rows) {
  std::vector<tnn::Token> tokens;
  double y = 0.3;
  for (const auto& r : rows) {
    tokens.push_back(tok(r[0], 0.55, y));
    tokens.push_back(tok(r[1], 0.68, y));
    tokens.push_back(tok(r[2], 0.82, y));
    y += 0.03;
  }
  return doc_of(std::move(tokens));
}

const std::vector<int> kGatedLevels = {1, 2, 3};

}  // namespace

TEST_CASE("empty document reads zero everywhere at level 1") {
  const auto fx = tnn::FeatureExtractor::default_extractors();
  const auto v = fx.extract_all(doc_of({}));
  REQUIRE(v.values.size() == 10);
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    CHECK(v.values[i] == 0.0);
    CHECK(v.levels[i] == 1);
  }
}

TEST_CASE("every extractor returns zero on an empty document at every level") {
  const auto empty = doc_of({});
  for (int k = 0; k <= static_cast<int>(ExtractorKind::kIsolatedBlock); ++k) {
    const auto kind = static_cast<ExtractorKind>(k);
    for (int level = 1; level <= tnn::native_levels(kind); ++level) {
      CHECK(value(kind, empty, level) == 0.0);
    }
  }
}

TEST_CASE("a numbers column activates amount_area at level 1") {
  const auto doc = doc_of({tok("12.50", 0.70, 0.30), tok("7.00", 0.70, 0.33),
                           tok("140.25", 0.705, 0.36), tok("Widget", 0.30, 0.30)});
  // Oracle: numeric share of the tokens with x >= 0.5.
  std::size_t region = 0;
  std::size_t numeric = 0;
  for (const auto& t : doc.tokens) {
    if (t.x < 0.5) continue;
    ++region;
    if (t.kind == tnn::TokenKind::kNumeric) ++numeric;
  }
  const double expected = static_cast<double>(numeric) / static_cast<double>(region);
  const auto v = tnn::FeatureExtractor::default_extractors().extract_all(doc);
  CHECK(*v.value("amount_area") == expected);
  CHECK(*v.value("amount_area") >= 0.5);
}

TEST_CASE("unknown element or level in overrides") {
  const auto fx = tnn::FeatureExtractor::default_extractors();
  CHECK_THROWS_AS(fx.extract_all(doc_of({}), {{"amount_area", 5}}), tnn::Error);
  CHECK_THROWS_AS(fx.extract_all(doc_of({}), {{"isolated_block", 2}}), tnn::Error);
  CHECK_THROWS_AS(fx.extract_all(doc_of({}), {{"no_such_element", 1}}), tnn::Error);
  const auto v = fx.extract_all(doc_of({}), {{"amount_area", 3}});
  CHECK(*v.level("amount_area") == 3);
}

TEST_CASE("product gate") {
  // Oracle: each row checked by hand, 2 * 3.5 = 7 and 1 * 10 = 10.
  CHECK(2.0 * 3.5 == 7.0);
  CHECK(1.0 * 10.0 == 10.0);
  const auto good = product_rows({{"2", "3.5", "7.0"}, {"1", "10", "10"}});
  CHECK(tnn::product_columns_gate(good));
  // Two rows are below the column floor, so the level-3 value needs a third.
  const auto table = product_rows({{"2", "3.5", "7.0"}, {"1", "10", "10"}, {"3", "1.5", "4.5"}});
  CHECK(value(ExtractorKind::kAmountArea, table, 3) == 1.0);

  CHECK(2.0 * 3.5 != 8.0);
  const auto bad = product_rows({{"2", "3.5", "8.0"}});
  CHECK_FALSE(tnn::product_columns_gate(bad));
  CHECK(value(ExtractorKind::kAmountArea, bad, 3) == 0.0);

  const auto mixed = product_rows({{"2", "3.5", "8.0"}, {"1", "10", "10"}, {"4", "2.5", "10.00"}});
  CHECK(tnn::product_columns_gate(mixed));
}

TEST_CASE("all-alphabetic document gives no amount area") {
  const auto doc = doc_of({tok("Dear", 0.6, 0.2), tok("Madam", 0.7, 0.2), tok("Kind", 0.6, 0.3)});
  for (int level : kGatedLevels) CHECK(value(ExtractorKind::kAmountArea, doc, level) == 0.0);
}

TEST_CASE("designation zone") {
  const auto words = doc_of({tok("Widget", 0.35, 0.30), tok("Bracket", 0.35, 0.33),
                             tok("Bolt", 0.35, 0.36)});
  CHECK(value(ExtractorKind::kDesignationZone, words, 1) >= 0.5);
  CHECK(value(ExtractorKind::kDesignationZone, words, 2) >= 0.5);
  // No flanking columns: the level-3 gate does not hold.
  CHECK(value(ExtractorKind::kDesignationZone, words, 3) == 0.0);

  const auto numbers = doc_of({tok("12", 0.35, 0.30), tok("14", 0.35, 0.33)});
  CHECK(value(ExtractorKind::kDesignationZone, numbers, 1) == 0.0);

  auto table = words;
  const char* codes[] = {"AB", "CDX", "EF"};
  const char* amounts[] = {"12.00", "30.50", "7.25"};
  for (int r = 0; r < 3; ++r) {
    table.tokens.push_back(tok(codes[r], 0.06, 0.30 + 0.03 * r));
    table.tokens.push_back(tok(amounts[r], 0.80, 0.30 + 0.03 * r));
  }
  const double l2 = value(ExtractorKind::kDesignationZone, table, 2);
  CHECK(l2 > 0.0);
  CHECK(value(ExtractorKind::kDesignationZone, table, 3) == l2);
}

TEST_CASE("code area") {
  const auto left = doc_of({tok("ABC1", 0.05, 0.30), tok("ABD2", 0.05, 0.33),
                            tok("CDE9", 0.05, 0.36)});
  CHECK(value(ExtractorKind::kCodeArea, left, 1) > 0.0);
  CHECK(value(ExtractorKind::kCodeArea, left, 3) > 0.0);
  CHECK(value(ExtractorKind::kCodeArea, doc_of({}), 1) == 0.0);

  const auto right = doc_of({tok("ABC1", 0.85, 0.30), tok("ABD2", 0.85, 0.33),
                             tok("CDE9", 0.85, 0.36)});
  CHECK(value(ExtractorKind::kCodeArea, right, 3) == 0.0);
  // Something further left on the same rows breaks the position gate too.
  auto shifted = doc_of({tok("ABC1", 0.15, 0.30), tok("ABD2", 0.15, 0.33),
                         tok("CDE9", 0.15, 0.36), tok("x", 0.02, 0.33, 0.01)});
  CHECK(value(ExtractorKind::kCodeArea, shifted, 2) > 0.0);
  CHECK(value(ExtractorKind::kCodeArea, shifted, 3) == 0.0);
}

TEST_CASE("vertical alignment") {
  std::vector<tnn::Token> tokens;
  for (int i = 0; i < 4; ++i) tokens.push_back(tok("Item", 0.10, 0.1 + 0.05 * i));
  const double xs[] = {0.30, 0.45, 0.60, 0.75};
  for (int i = 0; i < 4; ++i) tokens.push_back(tok("Note", xs[i], 0.1 + 0.05 * i));
  // Counting oracle: 4 of 8 on one left edge.
  CHECK(value(ExtractorKind::kVerticalAlignment, doc_of(tokens), 1) == 4.0 / 8.0);

  CHECK(value(ExtractorKind::kVerticalAlignment,
              doc_of({tok("a", 0.1, 0.1), tok("b", 0.1, 0.2)}), 1) == 0.0);

  // Flush-right figures of different widths, ragged on the left.
  const auto ragged = doc_of({tok("1.00", 0.80, 0.3, 0.04), tok("100.00", 0.76, 0.33, 0.08),
                              tok("10.00", 0.78, 0.36, 0.06), tok("x", 0.1, 0.5, 0.01)});
  CHECK(value(ExtractorKind::kVerticalAlignment, ragged, 2) >
        value(ExtractorKind::kVerticalAlignment, ragged, 1));
}

TEST_CASE("horizontal alignment") {
  const auto even = doc_of({tok("a", 0.1, 0.5, 0.05), tok("b", 0.25, 0.5, 0.05),
                            tok("c", 0.4, 0.5, 0.05), tok("d", 0.55, 0.5, 0.05)});
  CHECK(value(ExtractorKind::kHorizontalAlignment, even, 1) == doctest::Approx(1.0));

  CHECK(value(ExtractorKind::kHorizontalAlignment,
              doc_of({tok("a", 0.1, 0.1), tok("b", 0.3, 0.1), tok("c", 0.1, 0.4)}), 1) == 0.0);

  // Gaps 0.05, 0.20, 0.05: mean 0.1, variance 0.005, score 1 - 0.005 / 0.01 = 0.5.
  const auto uneven = doc_of({tok("a", 0.1, 0.5, 0.05), tok("b", 0.2, 0.5, 0.05),
                              tok("c", 0.45, 0.5, 0.05), tok("d", 0.55, 0.5, 0.05)});
  const double g[] = {0.05, 0.20, 0.05};
  const double mean = (g[0] + g[1] + g[2]) / 3.0;
  double var = 0.0;
  for (double x : g) var += (x - mean) * (x - mean);
  var /= 3.0;
  const double got = value(ExtractorKind::kHorizontalAlignment, uneven, 1);
  CHECK(got < 1.0);
  CHECK(got == doctest::Approx(1.0 - var / (mean * mean)));
}

TEST_CASE("total keywords") {
  const auto both = doc_of({tok("Total", 0.6, 0.7), tok("VAT", 0.6, 0.74)});
  CHECK(value(ExtractorKind::kKeywordsTotal, both, 1) == 1.0);
  const auto tax = doc_of({tok("Tax", 0.6, 0.7)});
  CHECK(value(ExtractorKind::kKeywordsTotal, tax, 1) == 0.0);
  CHECK(value(ExtractorKind::kKeywordsTotal, tax, 2) == 0.5);
  const auto none = doc_of({tok("Hello", 0.1, 0.1)});
  CHECK(value(ExtractorKind::kKeywordsTotal, none, 1) == 0.0);
  CHECK(value(ExtractorKind::kKeywordsTotal, none, 2) == 0.0);
}

TEST_CASE("address keywords") {
  const auto three = doc_of({tok("Mr.", 0.1, 0.2), tok("Dupont", 0.14, 0.2),
                             tok("12", 0.1, 0.23), tok("Street", 0.13, 0.23),
                             tok("BP", 0.1, 0.26), tok("451", 0.13, 0.26)});
  CHECK(value(ExtractorKind::kKeywordsAddress, three, 1) == 1.0);
  CHECK(value(ExtractorKind::kKeywordsAddress, three, 2) == 1.0);

  const auto bare = doc_of({tok("Name", 0.1, 0.2)});
  CHECK(value(ExtractorKind::kKeywordsAddress, bare, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(value(ExtractorKind::kKeywordsAddress, bare, 2) == 0.0);
  CHECK(value(ExtractorKind::kKeywordsAddress, doc_of({}), 1) == 0.0);
}

TEST_CASE("text block") {
  std::vector<tnn::Token> para;
  for (int r = 0; r < 5; ++r) {
    for (int w = 0; w < 6; ++w) para.push_back(tok("word", 0.1 + 0.06 * w, 0.3 + 0.025 * r));
  }
  CHECK(value(ExtractorKind::kTextBlock, doc_of(para), 1) == 1.0);
  CHECK(value(ExtractorKind::kTextBlock, doc_of(para), 2) == 1.0);

  std::vector<tnn::Token> numbers;
  for (int r = 0; r < 5; ++r) {
    for (int w = 0; w < 6; ++w) numbers.push_back(tok("42", 0.1 + 0.06 * w, 0.3 + 0.025 * r));
  }
  CHECK(value(ExtractorKind::kTextBlock, doc_of(numbers), 1) == 0.0);

  std::vector<tnn::Token> staggered;
  for (int r = 0; r < 5; ++r) {
    const double indent = 0.04 * r;
    for (int w = 0; w < 6; ++w) {
      staggered.push_back(tok("word", 0.1 + indent + 0.06 * w, 0.3 + 0.025 * r));
    }
  }
  CHECK(value(ExtractorKind::kTextBlock, doc_of(staggered), 2) <
        value(ExtractorKind::kTextBlock, doc_of(staggered), 1));
}

TEST_CASE("date indicator") {
  const auto good = doc_of({tok("12/05/2021", 0.7, 0.1)});
  CHECK(value(ExtractorKind::kDateIndicator, good, 1) == 1.0);
  CHECK(value(ExtractorKind::kDateIndicator, good, 2) == 1.0);
  const auto bad = doc_of({tok("45/13/2021", 0.7, 0.1)});
  CHECK(value(ExtractorKind::kDateIndicator, bad, 1) == 1.0);
  CHECK(value(ExtractorKind::kDateIndicator, bad, 2) == 0.0);
  const auto words = doc_of({tok("May", 0.7, 0.1), tok("12", 0.75, 0.1)});
  CHECK(value(ExtractorKind::kDateIndicator, words, 1) == 0.0);
}

TEST_CASE("isolated block") {
  const auto lone = doc_of({tok("Intro", 0.1, 0.3), tok("Signature:", 0.6, 0.9),
                            tok("Roux", 0.72, 0.9)});
  CHECK(value(ExtractorKind::kIsolatedBlock, lone, 1) == 1.0);
  CHECK(value(ExtractorKind::kIsolatedBlock, doc_of({tok("Top", 0.1, 0.1)}), 1) == 0.0);

  std::vector<tnn::Token> dense;
  for (int r = 0; r < 12; ++r) {
    for (int w = 0; w < 3; ++w) dense.push_back(tok("text", 0.1 + 0.1 * w, 0.7 + 0.02 * r));
  }
  CHECK(value(ExtractorKind::kIsolatedBlock, doc_of(dense), 1) == 0.0);
}

TEST_CASE("extractors are deterministic, bounded and ordered by cost") {
  tnn::GenSpec spec = tnn::testing::desk_spec(11, 10, 10, 10, "fz");
  spec.noise.jitter = 0.02;
  spec.noise.distort_rate = 0.3;
  const tnn::Corpus corpus = tnn::generate(spec);
  const tnn::ExtractorParams params;
  for (const auto& doc : corpus) {
    for (int k = 0; k <= static_cast<int>(ExtractorKind::kIsolatedBlock); ++k) {
      const auto kind = static_cast<ExtractorKind>(k);
      std::uint64_t previous_work = 0;
      for (int level = 1; level <= tnn::native_levels(kind); ++level) {
        const auto a = tnn::run_extractor(kind, doc, level, params);
        const auto b = tnn::run_extractor(kind, doc, level, params);
        CHECK(a.value == b.value);
        CHECK(a.work == b.work);
        CHECK(a.value >= 0.0);
        CHECK(a.value <= 1.0);
        CHECK(a.work >= previous_work);
        previous_work = a.work;
      }
    }
  }
}

TEST_CASE("gated extractors never gain value when refined") {
  const ExtractorKind gated[] = {ExtractorKind::kAmountArea, ExtractorKind::kDesignationZone,
                                 ExtractorKind::kCodeArea, ExtractorKind::kKeywordsAddress,
                                 ExtractorKind::kTextBlock, ExtractorKind::kDateIndicator};
  tnn::GenSpec spec = tnn::testing::desk_spec(12, 15, 15, 15, "gate");
  spec.noise.jitter = 0.01;
  const tnn::Corpus corpus = tnn::generate(spec);
  const tnn::ExtractorParams params;
  for (const auto& doc : corpus) {
    for (auto kind : gated) {
      double previous = 1.0;
      for (int level = 1; level <= tnn::native_levels(kind); ++level) {
        const double v = tnn::run_extractor(kind, doc, level, params).value;
        CHECK(v <= previous);
        previous = v;
      }
    }
  }
}

TEST_CASE("random token soup stays in range") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pos(0.0, 0.9);
  const char* texts[] = {"Total", "12.50", "AB12", "Mr.", "12/05/2021", "#", "VAT", "BP", "x"};
  const auto fx = tnn::FeatureExtractor::default_extractors();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<tnn::Token> tokens;
    const int n = static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) tokens.push_back(tok(texts[rng() % 9], pos(rng), pos(rng)));
    const auto doc = doc_of(tokens);
    std::map<std::string, int> deepest;
    for (const auto& e : fx.extractors()) deepest[e.element_name] = e.max_level();
    for (const auto& v : {fx.extract_all(doc), fx.extract_all(doc, deepest)}) {
      for (double x : v.values) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
    }
  }
}

TEST_CASE("extractor set validation") {
  CHECK_THROWS_AS(tnn::make_element_extractor("e", ExtractorKind::kAmountArea, 0), tnn::Error);
  CHECK(tnn::make_element_extractor("e", ExtractorKind::kIsolatedBlock, 3).max_level() == 1);
  const auto a = tnn::make_element_extractor("e", ExtractorKind::kAmountArea, 2);
  CHECK_THROWS_AS(tnn::FeatureExtractor({a, a}), tnn::Error);
}
