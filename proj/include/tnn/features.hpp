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

// Rule-based extractors that activate the element layer.
//
// Each extractor scores the presence of one layout characteristic in [0, 1]
// and offers up to three levels. Level 1 is the cheapest; every higher level
// recomputes the level below and then tightens it, so a refined value never
// costs less work than the one it replaces.

#ifndef TNN_FEATURES_HPP_
#define TNN_FEATURES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/document.hpp"

namespace tnn {

enum class ExtractorKind {
  kAmountArea,
  kDesignationZone,
  kCodeArea,
  kVerticalAlignment,
  kHorizontalAlignment,
  kKeywordsTotal,
  kKeywordsAddress,
  kTextBlock,
  kDateIndicator,
  kIsolatedBlock,
};

std::string_view to_string(ExtractorKind kind);
std::optional<ExtractorKind> extractor_kind_from_string(std::string_view name);

// Number of levels an extractor kind implements (1 to 3).
int native_levels(ExtractorKind kind);

// Geometry thresholds shared by all extractors. All distances are page
// fractions.
struct ExtractorParams {
  double align_tolerance = 0.01;   // edges within +/- this share a column
  double row_tolerance = 0.01;     // tops within this share a row
  std::size_t min_group = 3;       // smallest aligned group that counts
  double right_region = 0.5;       // amount area: tokens with x >= this
  double middle_band_lo = 0.2;     // designation zone: center x range
  double middle_band_hi = 0.7;
  double left_band = 0.3;          // code area: tokens with x < this
  double bottom_band = 0.8;        // isolated block: tokens with y > this
  double isolation_gap = 0.05;
  std::size_t isolated_max_tokens = 4;
  double product_tolerance = 1e-6;  // relative, quantity * price = amount
  std::size_t text_row_min_tokens = 5;
  std::size_t text_min_rows = 3;
  double text_row_gap = 0.05;
  double justify_fraction = 0.8;
  std::size_t code_max_length = 6;

  bool operator==(const ExtractorParams&) const = default;
};

// Value plus the number of token visits spent computing it.
struct Extraction {
  double value = 0.0;
  std::uint64_t work = 0;
};

Extraction amount_area(const DocumentInstance& doc, int level, const ExtractorParams& params = {});
Extraction designation_zone(const DocumentInstance& doc, int level,
                            const ExtractorParams& params = {});
Extraction code_area(const DocumentInstance& doc, int level, const ExtractorParams& params = {});
Extraction vertical_alignment(const DocumentInstance& doc, int level,
                              const ExtractorParams& params = {});
Extraction horizontal_alignment(const DocumentInstance& doc, int level,
                                const ExtractorParams& params = {});
Extraction keywords_total(const DocumentInstance& doc, int level,
                          const ExtractorParams& params = {});
Extraction keywords_address(const DocumentInstance& doc, int level,
                            const ExtractorParams& params = {});
Extraction text_block(const DocumentInstance& doc, int level, const ExtractorParams& params = {});
Extraction date_indicator(const DocumentInstance& doc, int level,
                          const ExtractorParams& params = {});
Extraction isolated_block(const DocumentInstance& doc, int level,
                          const ExtractorParams& params = {});

// The q * p = a check used by amount_area level 3: three numeric columns
// whose rows satisfy the product for at least half of the rows they share.
bool product_columns_gate(const DocumentInstance& doc, const ExtractorParams& params = {});

Extraction run_extractor(ExtractorKind kind, const DocumentInstance& doc, int level,
                         const ExtractorParams& params);

struct ElementExtractor {
  std::string element_name;
  ExtractorKind kind = ExtractorKind::kAmountArea;
  // cost_rank[i] is the relative cost of level i + 1; strictly increasing.
  std::vector<int> cost_rank;

  int max_level() const { return static_cast<int>(cost_rank.size()); }

  bool operator==(const ElementExtractor&) const = default;
};

// Extractor bound to `name` using `kind` with `levels` levels, capped at the
// kind's native level count.
ElementExtractor make_element_extractor(std::string name, ExtractorKind kind, int levels);

struct ElementVector {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<int> levels;

  std::optional<double> value(std::string_view name) const;
  std::optional<int> level(std::string_view name) const;

  bool operator==(const ElementVector&) const = default;
};

class FeatureExtractor {
 public:
  FeatureExtractor(std::vector<ElementExtractor> extractors, ExtractorParams params = {});

  // One extractor per element of the default topology, at full depth.
  static FeatureExtractor default_extractors();

  const std::vector<ElementExtractor>& extractors() const { return extractors_; }
  const ExtractorParams& params() const { return params_; }
  std::vector<std::string> element_names() const;

  // Evaluates every element at level 1 unless overridden. Throws
  // Error(kInvalidArgument) on an unknown element or an out-of-range level.
  ElementVector extract_all(const DocumentInstance& doc,
                            const std::map<std::string, int>& level_overrides = {}) const;

  // Evaluates element `index` at `level`, clamped to [0, 1].
  Extraction extract(std::size_t index, const DocumentInstance& doc, int level) const;

  bool operator==(const FeatureExtractor&) const = default;

 private:
  std::vector<ElementExtractor> extractors_;
  ExtractorParams params_;
};

}  // namespace tnn

#endif  // TNN_FEATURES_HPP_
