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

#include "tnn/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <regex>
#include <span>

#include "tnn/error.hpp"

namespace tnn {
namespace {

constexpr double kSlack = 1e-12;

using Indices = std::vector<std::size_t>;
using Rows = std::vector<Indices>;

Indices all_indices(const DocumentInstance& doc) {
  Indices idx(doc.tokens.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

// Tokens whose tops lie within `tol` of the first token of the row share it.
// Rows come back top to bottom, tokens left to right.
Rows group_rows(const std::vector<Token>& tokens, Indices idx, double tol, std::uint64_t& work) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (tokens[a].y != tokens[b].y) return tokens[a].y < tokens[b].y;
    return tokens[a].x < tokens[b].x;
  });
  Rows rows;
  double anchor = 0.0;
  for (std::size_t i : idx) {
    ++work;
    if (rows.empty() || tokens[i].y - anchor > tol + kSlack) {
      rows.emplace_back();
      anchor = tokens[i].y;
    }
    rows.back().push_back(i);
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(),
              [&](std::size_t a, std::size_t b) { return tokens[a].x < tokens[b].x; });
  }
  return rows;
}

struct AlignedGroup {
  std::size_t count = 0;
  double anchor = 0.0;
};

// Largest set of edges lying within +/- tol of one of them.
AlignedGroup max_aligned(std::vector<double> edges, double tol, std::uint64_t& work) {
  std::sort(edges.begin(), edges.end());
  AlignedGroup best;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ++work;
    while (edges[i] - edges[lo] > tol + kSlack) ++lo;
    if (hi < i) hi = i;
    while (hi + 1 < edges.size() && edges[hi + 1] - edges[i] <= tol + kSlack) ++hi;
    const std::size_t count = hi - lo + 1;
    if (count > best.count) best = {count, edges[i]};
  }
  return best;
}

template <typename Edge>
AlignedGroup aligned_by(const std::vector<Token>& tokens, const Indices& idx, Edge edge,
                        double tol, std::uint64_t& work) {
  std::vector<double> edges;
  edges.reserve(idx.size());
  for (std::size_t i : idx) edges.push_back(edge(tokens[i]));
  return max_aligned(std::move(edges), tol, work);
}

double left_edge(const Token& t) { return t.x; }
double right_edge(const Token& t) { return t.right(); }

bool within(double value, double anchor, double tol) {
  return std::abs(value - anchor) <= tol + kSlack;
}

std::size_t count_letters(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
  }));
}

std::size_t count_digits(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; }));
}

// Alphabetic, or alphanumeric with more letters than digits.
bool designation_like(const Token& t) {
  if (t.kind == TokenKind::kAlphabetic) return true;
  return t.kind == TokenKind::kAlphanumeric && count_letters(t.text) > count_digits(t.text);
}

// Short upper-case reference such as "AB12": letters in the majority.
bool code_like(const Token& t, std::size_t max_length) {
  const std::string& s = t.text;
  if (s.size() < 2 || s.size() > max_length) return false;
  if (t.kind != TokenKind::kAlphabetic && t.kind != TokenKind::kAlphanumeric) return false;
  std::size_t letters = 0;
  for (unsigned char c : s) {
    if (c >= 'A' && c <= 'Z') {
      ++letters;
    } else if (!(c >= '0' && c <= '9') && c != '-') {
      return false;
    }
  }
  return 2 * letters > s.size();
}

std::optional<double> parse_number(std::string_view text) {
  std::string s(text);
  const auto dots = std::count(s.begin(), s.end(), '.');
  const auto commas = std::count(s.begin(), s.end(), ',');
  auto strip = [&s](char c) { s.erase(std::remove(s.begin(), s.end(), c), s.end()); };
  if (dots > 0 && commas > 0) {
    const char decimal = s.find_last_of('.') > s.find_last_of(',') ? '.' : ',';
    const char thousands = decimal == '.' ? ',' : '.';
    if (std::count(s.begin(), s.end(), decimal) > 1) return std::nullopt;
    strip(thousands);
    std::replace(s.begin(), s.end(), ',', '.');
  } else if (commas > 1) {
    strip(',');
  } else if (dots > 1) {
    strip('.');
  } else {
    std::replace(s.begin(), s.end(), ',', '.');
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

char fold_latin1(unsigned char second) {
  // Second byte of a two-byte UTF-8 sequence led by 0xC3 (U+00C0..U+00FF).
  static constexpr char kMap[64 + 1] =
      "aaaaaaaceeeeiiiidnooooo*ouuuuyts"
      "aaaaaaaceeeeiiiidnooooo/ouuuuyty";
  const unsigned idx = second - 0x80u;
  return idx < 64 ? kMap[idx] : '\0';
}

// Lower-case ASCII letters and digits only.
std::string normalize_word(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out.push_back(static_cast<char>(c));
    } else if (c == 0xC3 && i + 1 < text.size()) {
      const char folded = fold_latin1(static_cast<unsigned char>(text[++i]));
      if (folded >= 'a' && folded <= 'z') out.push_back(folded);
    }
  }
  return out;
}

using Keyword = std::vector<std::string>;

std::vector<Keyword> keyword_set(std::initializer_list<const char*> phrases) {
  std::vector<Keyword> set;
  for (const char* phrase : phrases) {
    Keyword words;
    std::string_view rest(phrase);
    while (!rest.empty()) {
      const auto space = rest.find(' ');
      words.push_back(normalize_word(rest.substr(0, space)));
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
    set.push_back(std::move(words));
  }
  return set;
}

const std::vector<Keyword>& total_keywords() {
  static const auto set = keyword_set({"VAT", "Total"});
  return set;
}

const std::vector<Keyword>& total_keywords_extended() {
  static const auto set = keyword_set({"tax", "VAT", "amount", "net pay", "total"});
  return set;
}

const std::vector<Keyword>& address_keywords() {
  static const auto set = keyword_set({"Mr.", "Mrs.", "Name", "postal Code", "Town and Country",
                                       "street", "codex", "BP", "CP", "Sir"});
  return set;
}

struct KeywordHit {
  std::size_t keyword = 0;
  std::size_t row = 0;
  std::size_t first = 0;  // position inside the row
  std::size_t last = 0;
};

struct KeywordScan {
  Rows rows;
  std::vector<KeywordHit> hits;
  std::vector<bool> is_keyword;  // by token index
};

KeywordScan scan_keywords(const DocumentInstance& doc, const std::vector<Keyword>& keywords,
                          const ExtractorParams& params, std::uint64_t& work) {
  KeywordScan scan;
  scan.rows = group_rows(doc.tokens, all_indices(doc), params.row_tolerance, work);
  scan.is_keyword.assign(doc.tokens.size(), false);
  for (std::size_t r = 0; r < scan.rows.size(); ++r) {
    const auto& row = scan.rows[r];
    std::vector<std::string> words;
    words.reserve(row.size());
    for (std::size_t i : row) {
      ++work;
      words.push_back(normalize_word(doc.tokens[i].text));
    }
    for (std::size_t p = 0; p < row.size(); ++p) {
      for (std::size_t k = 0; k < keywords.size(); ++k) {
        const auto& kw = keywords[k];
        if (p + kw.size() > row.size()) continue;
        if (!std::equal(kw.begin(), kw.end(), words.begin() + static_cast<std::ptrdiff_t>(p))) {
          continue;
        }
        scan.hits.push_back({k, r, p, p + kw.size() - 1});
        for (std::size_t q = p; q < p + kw.size(); ++q) scan.is_keyword[row[q]] = true;
      }
    }
  }
  return scan;
}

std::size_t distinct_keywords(const std::vector<KeywordHit>& hits) {
  std::vector<std::size_t> ids;
  for (const auto& h : hits) ids.push_back(h.keyword);
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

bool has_adjacent_value(const DocumentInstance& doc, const KeywordScan& scan, const KeywordHit& hit,
                        const ExtractorParams& params, std::uint64_t& work) {
  const auto& row = scan.rows[hit.row];
  for (std::size_t p = 0; p < row.size(); ++p) {
    ++work;
    if (p >= hit.first && p <= hit.last) continue;
    if (!scan.is_keyword[row[p]]) return true;
  }
  if (hit.row + 1 >= scan.rows.size()) return false;
  const auto& next = scan.rows[hit.row + 1];
  const Token& first = doc.tokens[row[hit.first]];
  const Token& last = doc.tokens[row[hit.last]];
  if (doc.tokens[next.front()].y - first.y > params.text_row_gap + kSlack) return false;
  const double lo = first.x - params.isolation_gap;
  const double hi = last.right() + 0.3;
  for (std::size_t i : next) {
    ++work;
    const Token& t = doc.tokens[i];
    if (!scan.is_keyword[i] && t.right() >= lo && t.x <= hi) return true;
  }
  return false;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_level(int level, int max_level, ExtractorKind kind) {
  if (level < 1 || level > max_level) {
    throw Error(ErrorCode::kInvalidArgument, std::string(to_string(kind)) + ": level " +
                                                 std::to_string(level) + " outside [1, " +
                                                 std::to_string(max_level) + "]");
  }
}

bool product_gate_impl(const DocumentInstance& doc, const ExtractorParams& params,
                       std::uint64_t& work) {
  const auto& tokens = doc.tokens;
  struct Numeric {
    std::size_t token;
    double value;
  };
  std::vector<Numeric> numbers;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    ++work;
    if (tokens[i].kind != TokenKind::kNumeric) continue;
    if (auto v = parse_number(tokens[i].text)) numbers.push_back({i, *v});
  }
  if (numbers.size() < 3) return false;

  // Columns are merged runs of horizontally overlapping numbers.
  std::sort(numbers.begin(), numbers.end(),
            [&](const Numeric& a, const Numeric& b) { return tokens[a.token].x < tokens[b.token].x; });
  std::vector<std::size_t> column_of(tokens.size(), 0);
  std::size_t columns = 0;
  double reach = -1.0;
  for (const auto& n : numbers) {
    ++work;
    const Token& t = tokens[n.token];
    if (columns == 0 || t.x > reach + kSlack) {
      ++columns;
      reach = t.right();
    } else {
      reach = std::max(reach, t.right());
    }
    column_of[n.token] = columns - 1;
  }
  if (columns < 3) return false;

  std::vector<double> value_of(tokens.size(), 0.0);
  Indices idx;
  for (const auto& n : numbers) {
    idx.push_back(n.token);
    value_of[n.token] = n.value;
  }
  const Rows rows = group_rows(tokens, idx, params.row_tolerance, work);

  // cells[r][c] = value of column c in row r, if any.
  std::vector<std::vector<std::optional<double>>> cells(rows.size(),
                                                        std::vector<std::optional<double>>(columns));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i : rows[r]) {
      ++work;
      auto& cell = cells[r][column_of[i]];
      if (!cell) cell = value_of[i];
    }
  }

  for (std::size_t a = 0; a < columns; ++a) {
    for (std::size_t b = a + 1; b < columns; ++b) {
      for (std::size_t c = b + 1; c < columns; ++c) {
        std::size_t shared = 0;
        std::size_t satisfied = 0;
        for (const auto& row : cells) {
          ++work;
          if (!row[a] || !row[b] || !row[c]) continue;
          ++shared;
          const double product = *row[a] * *row[b];
          const double scale = std::max({std::abs(product), std::abs(*row[c]), 1e-300});
          if (std::abs(product - *row[c]) <= params.product_tolerance * scale) ++satisfied;
        }
        if (satisfied > 0 && 2 * satisfied >= shared) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::kAmountArea:
      return "amount_area";
    case ExtractorKind::kDesignationZone:
      return "designation_zone";
    case ExtractorKind::kCodeArea:
      return "code_area";
    case ExtractorKind::kVerticalAlignment:
      return "vertical_alignment";
    case ExtractorKind::kHorizontalAlignment:
      return "horizontal_alignment";
    case ExtractorKind::kKeywordsTotal:
      return "keywords_total";
    case ExtractorKind::kKeywordsAddress:
      return "keywords_address";
    case ExtractorKind::kTextBlock:
      return "text_block";
    case ExtractorKind::kDateIndicator:
      return "date_indicator";
    case ExtractorKind::kIsolatedBlock:
      return "isolated_block";
  }
  return "unknown";
}

std::optional<ExtractorKind> extractor_kind_from_string(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(ExtractorKind::kIsolatedBlock); ++k) {
    const auto kind = static_cast<ExtractorKind>(k);
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

int native_levels(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::kAmountArea:
    case ExtractorKind::kDesignationZone:
    case ExtractorKind::kCodeArea:
      return 3;
    case ExtractorKind::kVerticalAlignment:
    case ExtractorKind::kKeywordsTotal:
    case ExtractorKind::kKeywordsAddress:
    case ExtractorKind::kTextBlock:
    case ExtractorKind::kDateIndicator:
      return 2;
    case ExtractorKind::kHorizontalAlignment:
    case ExtractorKind::kIsolatedBlock:
      return 1;
  }
  return 1;
}

Extraction amount_area(const DocumentInstance& doc, int level, const ExtractorParams& params) {
  check_level(level, 3, ExtractorKind::kAmountArea);
  Extraction out;
  Indices region;
  Indices numeric;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    ++out.work;
    if (doc.tokens[i].x + kSlack < params.right_region) continue;
    region.push_back(i);
    if (doc.tokens[i].kind == TokenKind::kNumeric) numeric.push_back(i);
  }
  const double presence = ratio(numeric.size(), region.size());
  if (level == 1 || presence == 0.0) {
    out.value = presence;
    return out;
  }

  const auto left = aligned_by(doc.tokens, numeric, left_edge, params.align_tolerance, out.work);
  const auto right = aligned_by(doc.tokens, numeric, right_edge, params.align_tolerance, out.work);
  const bool vertical = std::max(left.count, right.count) >= params.min_group;
  const Rows rows = group_rows(doc.tokens, numeric, params.row_tolerance, out.work);
  const auto multi = std::count_if(rows.begin(), rows.end(),
                                   [](const Indices& row) { return row.size() >= 2; });
  const bool horizontal = multi >= 2;
  if (!vertical || !horizontal) return out;
  if (level == 2 || product_gate_impl(doc, params, out.work)) out.value = presence;
  return out;
}

bool product_columns_gate(const DocumentInstance& doc, const ExtractorParams& params) {
  std::uint64_t work = 0;
  return product_gate_impl(doc, params, work);
}

Extraction designation_zone(const DocumentInstance& doc, int level,
                            const ExtractorParams& params) {
  check_level(level, 3, ExtractorKind::kDesignationZone);
  Extraction out;
  std::size_t band = 0;
  Indices words;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    ++out.work;
    const Token& t = doc.tokens[i];
    const double c = t.center_x();
    if (c + kSlack < params.middle_band_lo || c > params.middle_band_hi + kSlack) continue;
    ++band;
    if (designation_like(t)) words.push_back(i);
  }
  const double score = ratio(words.size(), band);
  if (level == 1 || score == 0.0) {
    out.value = score;
    return out;
  }

  const auto column = aligned_by(doc.tokens, words, left_edge, params.align_tolerance, out.work);
  if (column.count < params.min_group) return out;
  if (level == 2) {
    out.value = score;
    return out;
  }

  // A code column to the left and a numeric column to the right.
  const double gx = column.anchor;
  Indices codes;
  Indices numbers;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    ++out.work;
    const Token& t = doc.tokens[i];
    if (t.x < gx - params.align_tolerance && code_like(t, params.code_max_length)) {
      codes.push_back(i);
    } else if (t.x > gx + params.align_tolerance && t.kind == TokenKind::kNumeric) {
      numbers.push_back(i);
    }
  }
  const auto code_col = aligned_by(doc.tokens, codes, left_edge, params.align_tolerance, out.work);
  const auto num_left = aligned_by(doc.tokens, numbers, left_edge, params.align_tolerance, out.work);
  const auto num_right =
      aligned_by(doc.tokens, numbers, right_edge, params.align_tolerance, out.work);
  if (code_col.count >= params.min_group &&
      std::max(num_left.count, num_right.count) >= params.min_group) {
    out.value = score;
  }
  return out;
}

Extraction code_area(const DocumentInstance& doc, int level, const ExtractorParams& params) {
  check_level(level, 3, ExtractorKind::kCodeArea);
  Extraction out;
  std::size_t band = 0;
  Indices codes;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    ++out.work;
    const Token& t = doc.tokens[i];
    if (t.x + kSlack >= params.left_band) continue;
    ++band;
    if (code_like(t, params.code_max_length)) codes.push_back(i);
  }
  const double purity = ratio(codes.size(), band);
  if (level == 1 || purity == 0.0) {
    out.value = purity;
    return out;
  }

  const auto column = aligned_by(doc.tokens, codes, left_edge, params.align_tolerance, out.work);
  if (column.count < params.min_group) return out;
  if (level == 2) {
    out.value = purity;
    return out;
  }

  // Nothing may sit to the left of the column within its vertical span.
  double top = 1.0;
  double bottom = 0.0;
  for (std::size_t i : codes) {
    ++out.work;
    const Token& t = doc.tokens[i];
    if (!within(t.x, column.anchor, params.align_tolerance)) continue;
    top = std::min(top, t.y);
    bottom = std::max(bottom, t.bottom());
  }
  for (const Token& t : doc.tokens) {
    ++out.work;
    const bool overlaps = t.bottom() > top && t.y < bottom;
    if (overlaps && t.x < column.anchor - params.align_tolerance - kSlack) return out;
  }
  out.value = purity;
  return out;
}

Extraction vertical_alignment(const DocumentInstance& doc, int level,
                              const ExtractorParams& params) {
  check_level(level, 2, ExtractorKind::kVerticalAlignment);
  Extraction out;
  const std::size_t n = doc.tokens.size();
  if (n < params.min_group) {
    out.work = n;
    return out;
  }
  const Indices idx = all_indices(doc);
  auto score = [&](const AlignedGroup& g) {
    return g.count >= params.min_group ? ratio(g.count, n) : 0.0;
  };
  out.value = score(aligned_by(doc.tokens, idx, left_edge, params.align_tolerance, out.work));
  if (level == 2) {
    out.value = std::max(
        out.value, score(aligned_by(doc.tokens, idx, right_edge, params.align_tolerance, out.work)));
  }
  return out;
}

Extraction horizontal_alignment(const DocumentInstance& doc, int level,
                                const ExtractorParams& params) {
  check_level(level, 1, ExtractorKind::kHorizontalAlignment);
  Extraction out;
  const Rows rows = group_rows(doc.tokens, all_indices(doc), params.row_tolerance, out.work);
  double total = 0.0;
  std::size_t counted = 0;
  for (const auto& row : rows) {
    if (row.size() < 3) continue;
    std::vector<double> gaps;
    for (std::size_t p = 0; p + 1 < row.size(); ++p) {
      ++out.work;
      gaps.push_back(doc.tokens[row[p + 1]].x - doc.tokens[row[p]].right());
    }
    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
    double variance = 0.0;
    for (double g : gaps) variance += (g - mean) * (g - mean);
    variance /= static_cast<double>(gaps.size());
    total += mean > 0.0 ? clamp01(1.0 - variance / (mean * mean)) : 0.0;
    ++counted;
  }
  out.value = counted == 0 ? 0.0 : total / static_cast<double>(counted);
  return out;
}

Extraction keywords_total(const DocumentInstance& doc, int level, const ExtractorParams& params) {
  check_level(level, 2, ExtractorKind::kKeywordsTotal);
  Extraction out;
  if (level == 1) {
    const auto scan = scan_keywords(doc, total_keywords(), params, out.work);
    out.value = 0.5 * static_cast<double>(distinct_keywords(scan.hits));
    return out;
  }
  // The level-1 pass runs first so the refined value never costs less.
  scan_keywords(doc, total_keywords(), params, out.work);
  const auto scan = scan_keywords(doc, total_keywords_extended(), params, out.work);
  out.value = clamp01(static_cast<double>(distinct_keywords(scan.hits)) / 2.0);
  return out;
}

Extraction keywords_address(const DocumentInstance& doc, int level,
                            const ExtractorParams& params) {
  check_level(level, 2, ExtractorKind::kKeywordsAddress);
  Extraction out;
  const auto scan = scan_keywords(doc, address_keywords(), params, out.work);
  if (level == 1) {
    out.value = clamp01(static_cast<double>(distinct_keywords(scan.hits)) / 3.0);
    return out;
  }
  std::vector<KeywordHit> valued;
  for (const auto& hit : scan.hits) {
    if (has_adjacent_value(doc, scan, hit, params, out.work)) valued.push_back(hit);
  }
  out.value = clamp01(static_cast<double>(distinct_keywords(valued)) / 3.0);
  return out;
}

Extraction text_block(const DocumentInstance& doc, int level, const ExtractorParams& params) {
  check_level(level, 2, ExtractorKind::kTextBlock);
  Extraction out;
  const Rows rows = group_rows(doc.tokens, all_indices(doc), params.row_tolerance, out.work);

  std::vector<bool> text_row(rows.size(), false);
  std::vector<std::size_t> alpha(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i : rows[r]) {
      ++out.work;
      if (doc.tokens[i].kind == TokenKind::kAlphabetic) ++alpha[r];
    }
    text_row[r] = rows[r].size() >= params.text_row_min_tokens && 2 * alpha[r] > rows[r].size();
  }

  // Longest run of consecutive, closely spaced text rows.
  std::size_t best_start = 0;
  std::size_t best_len = 0;
  for (std::size_t r = 0; r < rows.size();) {
    if (!text_row[r]) {
      ++r;
      continue;
    }
    std::size_t end = r + 1;
    while (end < rows.size() && text_row[end] &&
           doc.tokens[rows[end].front()].y - doc.tokens[rows[end - 1].front()].y <=
               params.text_row_gap + kSlack) {
      ++end;
    }
    if (end - r > best_len) {
      best_start = r;
      best_len = end - r;
    }
    r = end;
  }
  if (best_len < params.text_min_rows) return out;

  std::size_t band_alpha = 0;
  std::size_t band_tokens = 0;
  for (std::size_t r = best_start; r < best_start + best_len; ++r) {
    ++out.work;
    band_alpha += alpha[r];
    band_tokens += rows[r].size();
  }
  const double purity = ratio(band_alpha, band_tokens);
  if (level == 1) {
    out.value = purity;
    return out;
  }

  std::vector<double> starts;
  for (std::size_t r = best_start; r < best_start + best_len; ++r) {
    starts.push_back(doc.tokens[rows[r].front()].x);
  }
  const auto justified = max_aligned(std::move(starts), params.align_tolerance, out.work);
  if (static_cast<double>(justified.count) + kSlack >=
      params.justify_fraction * static_cast<double>(best_len)) {
    out.value = purity;
  }
  return out;
}

Extraction date_indicator(const DocumentInstance& doc, int level, const ExtractorParams&) {
  check_level(level, 2, ExtractorKind::kDateIndicator);
  static const std::regex kDate(R"(^(\d{2})([/-])(\d{2})\2(\d{2}|\d{4})$)");
  Extraction out;
  for (const Token& t : doc.tokens) {
    ++out.work;
    std::smatch m;
    if (!std::regex_match(t.text, m, kDate)) continue;
    if (level == 1) {
      out.value = 1.0;
      return out;
    }
    ++out.work;
    const int day = std::stoi(m[1].str());
    const int month = std::stoi(m[3].str());
    if (day >= 1 && day <= 31 && month >= 1 && month <= 12) {
      out.value = 1.0;
      return out;
    }
  }
  return out;
}

Extraction isolated_block(const DocumentInstance& doc, int level, const ExtractorParams& params) {
  check_level(level, 1, ExtractorKind::kIsolatedBlock);
  Extraction out;
  Indices idx = all_indices(doc);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return doc.tokens[a].y < doc.tokens[b].y; });

  // Vertical clusters split wherever the gap reaches isolation_gap.
  std::size_t start = 0;
  while (start < idx.size()) {
    double top = doc.tokens[idx[start]].y;
    double bottom = doc.tokens[idx[start]].bottom();
    std::size_t end = start + 1;
    ++out.work;
    while (end < idx.size() && doc.tokens[idx[end]].y - bottom < params.isolation_gap - kSlack) {
      ++out.work;
      bottom = std::max(bottom, doc.tokens[idx[end]].bottom());
      ++end;
    }
    const std::size_t size = end - start;
    if (top > params.bottom_band && size <= params.isolated_max_tokens) {
      out.value = 1.0;
      return out;
    }
    start = end;
  }
  return out;
}

Extraction run_extractor(ExtractorKind kind, const DocumentInstance& doc, int level,
                         const ExtractorParams& params) {
  switch (kind) {
    case ExtractorKind::kAmountArea:
      return amount_area(doc, level, params);
    case ExtractorKind::kDesignationZone:
      return designation_zone(doc, level, params);
    case ExtractorKind::kCodeArea:
      return code_area(doc, level, params);
    case ExtractorKind::kVerticalAlignment:
      return vertical_alignment(doc, level, params);
    case ExtractorKind::kHorizontalAlignment:
      return horizontal_alignment(doc, level, params);
    case ExtractorKind::kKeywordsTotal:
      return keywords_total(doc, level, params);
    case ExtractorKind::kKeywordsAddress:
      return keywords_address(doc, level, params);
    case ExtractorKind::kTextBlock:
      return text_block(doc, level, params);
    case ExtractorKind::kDateIndicator:
      return date_indicator(doc, level, params);
    case ExtractorKind::kIsolatedBlock:
      return isolated_block(doc, level, params);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown extractor kind");
}

ElementExtractor make_element_extractor(std::string name, ExtractorKind kind, int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::kValidation, "element '" + name + "' needs at least one level");
  }
  ElementExtractor e;
  e.element_name = std::move(name);
  e.kind = kind;
  const int depth = std::min(levels, native_levels(kind));
  for (int level = 1; level <= depth; ++level) e.cost_rank.push_back(level);
  return e;
}

std::optional<double> ElementVector::value(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return values[static_cast<std::size_t>(it - names.begin())];
}

std::optional<int> ElementVector::level(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return levels[static_cast<std::size_t>(it - names.begin())];
}

FeatureExtractor::FeatureExtractor(std::vector<ElementExtractor> extractors,
                                   ExtractorParams params)
    : extractors_(std::move(extractors)), params_(params) {
  for (const auto& e : extractors_) {
    if (e.cost_rank.empty() || e.cost_rank.size() > 3) {
      throw Error(ErrorCode::kValidation,
                  "element '" + e.element_name + "' must have between 1 and 3 levels");
    }
    if (e.max_level() > native_levels(e.kind)) {
      throw Error(ErrorCode::kValidation, "element '" + e.element_name + "' declares " +
                                              std::to_string(e.max_level()) + " levels but " +
                                              std::string(to_string(e.kind)) + " has " +
                                              std::to_string(native_levels(e.kind)));
    }
    if (!std::is_sorted(e.cost_rank.begin(), e.cost_rank.end(), std::less_equal<>())) {
      throw Error(ErrorCode::kValidation,
                  "element '" + e.element_name + "' has cost ranks out of order");
    }
  }
  for (std::size_t i = 0; i < extractors_.size(); ++i) {
    for (std::size_t j = i + 1; j < extractors_.size(); ++j) {
      if (extractors_[i].element_name == extractors_[j].element_name) {
        throw Error(ErrorCode::kValidation,
                    "duplicate element extractor '" + extractors_[i].element_name + "'");
      }
    }
  }
}

FeatureExtractor FeatureExtractor::default_extractors() {
  std::vector<ElementExtractor> extractors;
  for (int k = 0; k <= static_cast<int>(ExtractorKind::kIsolatedBlock); ++k) {
    const auto kind = static_cast<ExtractorKind>(k);
    extractors.push_back(make_element_extractor(std::string(to_string(kind)), kind, 3));
  }
  return FeatureExtractor(std::move(extractors));
}

std::vector<std::string> FeatureExtractor::element_names() const {
  std::vector<std::string> names;
  for (const auto& e : extractors_) names.push_back(e.element_name);
  return names;
}

Extraction FeatureExtractor::extract(std::size_t index, const DocumentInstance& doc,
                                     int level) const {
  const auto& e = extractors_.at(index);
  if (level < 1 || level > e.max_level()) {
    throw Error(ErrorCode::kInvalidArgument, "element '" + e.element_name + "' has no level " +
                                                 std::to_string(level));
  }
  Extraction out = run_extractor(e.kind, doc, level, params_);
  out.value = clamp01(out.value);
  return out;
}

ElementVector FeatureExtractor::extract_all(const DocumentInstance& doc,
                                            const std::map<std::string, int>& overrides) const {
  ElementVector v;
  v.names = element_names();
  v.levels.assign(extractors_.size(), 1);
  for (const auto& [name, level] : overrides) {
    auto it = std::find(v.names.begin(), v.names.end(), name);
    if (it == v.names.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown element '" + name + "' in overrides");
    }
    const auto index = static_cast<std::size_t>(it - v.names.begin());
    if (level < 1 || level > extractors_[index].max_level()) {
      throw Error(ErrorCode::kInvalidArgument, "element '" + name + "' has no level " +
                                                   std::to_string(level));
    }
    v.levels[index] = level;
  }
  v.values.reserve(extractors_.size());
  for (std::size_t i = 0; i < extractors_.size(); ++i) {
    v.values.push_back(extract(i, doc, v.levels[i]).value);
  }
  return v;
}

}  // namespace tnn
