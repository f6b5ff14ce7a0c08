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

#include "tnn/corpus_gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "tnn/error.hpp"
#include "util.hpp"

namespace tnn {
namespace {

constexpr double kCharWidth = 0.0085;
constexpr double kTokenHeight = 0.014;
constexpr double kWordGap = 0.009;

// Share of forms carrying a keyword-value grid and a totals block; these
// mirror how often tables and totals occur on forms in the benchmark tables
// (59 and 70 out of 90).
constexpr double kFormGridRate = 59.0 / 90.0;
constexpr double kFormTotalRate = 70.0 / 90.0;

// Documents that borrow a trait of another class: forms whose grid holds only
// figures, letters that quote an amount due.
constexpr double kNumericGridRate = 0.3;
constexpr double kLetterTotalRate = 0.25;

constexpr std::array kCompanies = {"Acme", "Dupont", "Global", "Nordic", "Atlas",
                                   "Orion", "Vertex", "Summit", "Delta", "Pioneer"};
constexpr std::array kCompanySuffixes = {"Industries", "Services", "Trading",
                                         "Supplies", "Systems", "Logistics"};
constexpr std::array kFirstNames = {"John", "Marie", "Paul", "Claire", "Ahmed",
                                    "Sofia", "Luc", "Emma", "Omar", "Nina"};
constexpr std::array kLastNames = {"Smith", "Martin", "Bernard", "Dubois", "Moreau",
                                   "Laurent", "Garcia", "Haddad", "Petit", "Roux"};
constexpr std::array kStreets = {"Rose", "Oak", "Victoria", "Liberty",
                                 "Garden", "Station", "Church", "Mill"};
constexpr std::array kCities = {"Paris", "Lyon", "Tunis", "Sfax",
                                "Nancy", "Lille", "Geneva", "Brussels"};
constexpr std::array kItems = {"Widget", "Bracket", "Bolt",   "Cable",  "Hinge",
                               "Valve",  "Gasket",  "Filter", "Bearing", "Spring",
                               "Washer", "Clamp",   "Sensor", "Switch", "Panel"};
constexpr std::array kItemQualifiers = {"Steel", "Large", "Small", "Brass", "Heavy"};
constexpr std::array kFormTitles = {"REGISTRATION", "APPLICATION", "ENROLMENT", "CLAIM"};
constexpr std::array kWords = {
    "we",       "are",      "pleased",  "to",       "inform",   "you",      "that",
    "your",     "request",  "has",      "been",     "received", "and",      "will",
    "be",       "examined", "by",       "our",      "services", "within",   "the",
    "coming",   "weeks",    "please",   "find",     "attached", "all",      "documents",
    "needed",   "for",      "this",     "procedure","should",   "any",      "question",
    "arise",    "do",       "not",      "hesitate", "contact",  "office",   "regarding",
    "meeting",  "planned",  "next",     "month",    "members",  "committee","decided",
    "approve",  "proposal", "with",     "several",  "changes",  "as",       "discussed",
    "during",   "last",     "visit",    "thank",    "kindly",   "confirm",  "receipt"};

enum class ValueType { kNumber, kWord };
struct FormField {
  const char* label;
  ValueType type;
};
constexpr std::array kFormFields = {
    FormField{"Age:", ValueType::kNumber},        FormField{"Phone:", ValueType::kNumber},
    FormField{"Income:", ValueType::kNumber},     FormField{"Children:", ValueType::kNumber},
    FormField{"Status:", ValueType::kWord},       FormField{"Country:", ValueType::kWord},
    FormField{"Profession:", ValueType::kWord},   FormField{"Reference:", ValueType::kNumber},
    FormField{"Account:", ValueType::kNumber},    FormField{"Nationality:", ValueType::kWord},
    FormField{"Employer:", ValueType::kWord},     FormField{"Dependents:", ValueType::kNumber}};
constexpr std::array kStatusWords = {"Single", "Married", "Engineer", "Teacher",
                                     "French", "Tunisian", "Retired", "Student"};

struct PlacedToken {
  std::string text;
  double x;
  double y;
  bool keyword;
};

class PageBuilder {
 public:
  PageBuilder(std::mt19937_64& rng, const NoiseSpec& noise) : rng_(rng), noise_(noise) {}

  double uniform() { return detail::uniform01(rng_); }
  bool chance(double p) { return uniform() < p; }
  std::size_t pick(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  template <typename Array>
  std::string choose(const Array& options) {
    return std::string(options[pick(options.size())]);
  }
  int between(int lo, int hi) { return lo + static_cast<int>(pick(static_cast<std::size_t>(hi - lo + 1))); }

  static double width_of(const std::string& text) {
    return std::min(0.9, kCharWidth * static_cast<double>(text.size()));
  }

  // Returns the right edge of the placed token.
  double word(std::string text, double x, double y, bool keyword = false) {
    const double right = x + width_of(text);
    placed_.push_back({std::move(text), x, y, keyword});
    return right;
  }

  void right_aligned(std::string text, double right, double y) {
    const double x = right - width_of(text);
    placed_.push_back({std::move(text), x, y, false});
  }

  // Lays words left to right from x; returns the right edge.
  double words(const std::vector<std::string>& texts, double x, double y,
               const std::vector<bool>& keyword = {}) {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      x = word(texts[i], x, y, i < keyword.size() && keyword[i]) + kWordGap;
    }
    return x - kWordGap;
  }

  std::vector<Token> finish() {
    std::vector<Token> tokens;
    tokens.reserve(placed_.size());
    for (auto& p : placed_) {
      std::string text = p.keyword && chance(noise_.distort_rate) ? distort(p.text) : p.text;
      const double w = width_of(text);
      double x = p.x + offset();
      double y = p.y + offset();
      x = std::clamp(x, 0.0, 1.0 - w);
      y = std::clamp(y, 0.0, 1.0 - kTokenHeight);
      tokens.push_back(make_token(std::move(text), x, y, w, kTokenHeight));
    }
    return tokens;
  }

 private:
  // Gaussian offset clipped at two standard deviations.
  double offset() {
    if (noise_.jitter <= 0.0) return 0.0;
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    return noise_.jitter * std::clamp(z, -2.0, 2.0);
  }

  // Deletes or swaps letters so the keyword no longer matches.
  std::string distort(const std::string& text) {
    std::vector<std::size_t> letters;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isalpha(static_cast<unsigned char>(text[i]))) letters.push_back(i);
    }
    std::string out = text;
    if (letters.size() >= 3 && chance(0.5)) {
      out.erase(letters[1 + pick(letters.size() - 1)], 1);
    } else if (letters.size() >= 2) {
      const std::size_t i = pick(letters.size() - 1);
      std::swap(out[letters[i]], out[letters[i + 1]]);
      if (out == text) out.erase(letters[i], 1);
    } else {
      out += "x";
    }
    return out;
  }

  std::mt19937_64& rng_;
  const NoiseSpec& noise_;
  std::vector<PlacedToken> placed_;
};

std::string money(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string date_text(PageBuilder& page) {
  char buf[16];
  const int day = page.between(1, 28);
  const int month = page.between(1, 12);
  const int year = page.between(2005, 2024);
  const char sep = page.chance(0.5) ? '/' : '-';
  if (page.chance(0.5)) {
    std::snprintf(buf, sizeof buf, "%02d%c%02d%c%04d", day, sep, month, sep, year);
  } else {
    std::snprintf(buf, sizeof buf, "%02d%c%02d%c%02d", day, sep, month, sep, year % 100);
  }
  return buf;
}

std::string code_text(PageBuilder& page) {
  std::string code;
  const int letters = page.between(2, 3);
  for (int i = 0; i < letters; ++i) code.push_back(static_cast<char>('A' + page.pick(26)));
  const int digits = page.between(1, letters - 1);
  for (int i = 0; i < digits; ++i) code.push_back(static_cast<char>('0' + page.pick(10)));
  return code;
}

std::string digits(PageBuilder& page, int count) {
  std::string s;
  for (int i = 0; i < count; ++i) s.push_back(static_cast<char>('0' + page.pick(10)));
  if (s[0] == '0' && count > 1) s[0] = '1';
  return s;
}

struct Placement {
  std::set<std::string> structures;
  std::set<std::string> substructures;
};

double drop_probability(const NoiseSpec& noise, std::initializer_list<const char*> keys,
                        double fallback) {
  bool overridden = false;
  double p = 0.0;
  for (const char* key : keys) {
    if (auto it = noise.drop_overrides.find(key); it != noise.drop_overrides.end()) {
      overridden = true;
      p = std::max(p, it->second);
    }
  }
  return overridden ? p : fallback;
}

bool keep(PageBuilder& page, const NoiseSpec& noise, std::initializer_list<const char*> keys,
          double fallback) {
  return !page.chance(drop_probability(noise, keys, fallback));
}

void place_header(PageBuilder& page, Placement& placed, const std::string& title1,
                  const std::string& title2) {
  page.words({page.choose(kCompanies), page.choose(kCompanySuffixes)}, 0.06, 0.04);
  if (!title1.empty()) {
    std::vector<std::string> title{title1};
    if (!title2.empty()) title.push_back(title2);
    page.words(title, 0.40, 0.08);
  }
  page.word(date_text(page), 0.75, 0.12);
  placed.structures.insert("header");
  placed.substructures.insert("date_line");
}

// Salutation, street and postal lines; three distinct address keywords.
void place_postal_address(PageBuilder& page, Placement& placed, double x, double y) {
  page.words({page.chance(0.5) ? "Mr." : "Mrs.", page.choose(kFirstNames), page.choose(kLastNames)},
             x, y, {true, false, false});
  page.words({std::to_string(page.between(1, 99)), page.choose(kStreets), "Street"}, x, y + 0.025,
             {false, false, true});
  if (page.chance(0.5)) {
    page.words({"Postal", "Code", digits(page, 5), page.choose(kCities)}, x, y + 0.05,
               {true, true, false, false});
  } else {
    page.words({"BP", digits(page, 4), page.choose(kCities)}, x, y + 0.05, {true, false, false});
  }
  placed.structures.insert("address");
  placed.substructures.insert("address_block");
}

// Label/value pairs, two tokens per line.
void place_form_address(PageBuilder& page, Placement& placed, double y) {
  page.word("Name:", 0.06, y, true);
  page.word(page.choose(kLastNames), 0.22, y);
  page.word("Street:", 0.06, y + 0.03, true);
  page.word(page.choose(kStreets), 0.22, y + 0.03);
  page.word("BP", 0.06, y + 0.06, true);
  page.word(digits(page, 4), 0.22, y + 0.06);
  placed.structures.insert("address");
  placed.substructures.insert("address_block");
}

void place_signature(PageBuilder& page, Placement& placed) {
  const double y = 0.86 + 0.04 * page.uniform();
  page.words({"Signature:", page.choose(kLastNames)}, 0.62, y);
  placed.structures.insert("signature");
  placed.substructures.insert("signature_block");
}

// One justified text line of at least five words starting at x; a short
// line ends somewhere past the middle of the page.
void place_text_line(PageBuilder& page, double x, double y, bool short_line) {
  const double limit = short_line ? 0.45 + 0.4 * page.uniform() : 0.9;
  int count = 0;
  while (true) {
    std::string w = page.choose(kWords);
    if (x + PageBuilder::width_of(w) > limit && count >= 5) break;
    if (x + PageBuilder::width_of(w) > 0.92) break;
    x = page.word(std::move(w), x, y) + kWordGap;
    ++count;
  }
}

Placement build_invoice(PageBuilder& page, const NoiseSpec& noise) {
  Placement placed;
  if (keep(page, noise, {"header"}, noise.drop_rate)) {
    place_header(page, placed, "INVOICE", "");
  }
  if (keep(page, noise, {"address"}, noise.drop_rate)) {
    place_postal_address(page, placed, 0.06, 0.15);
  }

  double y = 0.27;
  double subtotal = 0.0;
  if (keep(page, noise, {"invoice_body", "table"}, 0.0)) {
    page.word("Code", 0.06, y);
    page.word("Designation", 0.20, y);
    page.word("Qty", 0.50, y);
    page.word("Price", 0.62, y);
    page.right_aligned("Amount", 0.92, y);
    const int rows = page.between(3, 8);
    for (int r = 0; r < rows; ++r) {
      y += 0.028;
      const int qty = page.between(1, 20);
      const double price = page.between(100, 50000) / 100.0;
      const double amount = std::round(qty * price * 100.0) / 100.0;
      subtotal += amount;
      page.word(code_text(page), 0.06, y);
      if (page.chance(0.3)) {
        page.words({page.choose(kItemQualifiers), page.choose(kItems)}, 0.20, y);
      } else {
        page.word(page.choose(kItems), 0.20, y);
      }
      page.word(std::to_string(qty), 0.50, y);
      page.word(money(price), 0.62, y);
      page.right_aligned(money(amount), 0.92, y);
    }
    placed.structures.insert({"table", "invoice_body"});
    placed.substructures.insert({"numeric_column_group", "tabular_grid"});
  }

  if (keep(page, noise, {"total"}, noise.drop_rate)) {
    if (subtotal == 0.0) subtotal = page.between(1000, 90000) / 100.0;
    const double vat = std::round(subtotal * 20.0) / 100.0;
    y += 0.05;
    page.word("Subtotal", 0.62, y);
    page.right_aligned(money(subtotal), 0.92, y);
    y += 0.028;
    page.word("VAT", 0.62, y, true);
    page.right_aligned(money(vat), 0.92, y);
    y += 0.028;
    page.word("Total", 0.62, y, true);
    page.right_aligned(money(subtotal + vat), 0.92, y);
    placed.structures.insert("total");
    placed.substructures.insert("totals_line");
  }

  if (keep(page, noise, {"signature"}, noise.drop_rate)) place_signature(page, placed);
  return placed;
}

Placement build_form(PageBuilder& page, const NoiseSpec& noise) {
  Placement placed;
  if (keep(page, noise, {"header"}, noise.drop_rate)) {
    place_header(page, placed, page.choose(kFormTitles), "FORM");
  }
  if (keep(page, noise, {"address"}, noise.drop_rate)) place_form_address(page, placed, 0.16);

  double y = 0.30;
  const bool has_grid = page.chance(kFormGridRate);
  if (has_grid && keep(page, noise, {"table"}, noise.drop_rate)) {
    std::vector<std::size_t> fields(kFormFields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) fields[i] = i;
    for (std::size_t i = fields.size(); i > 1; --i) std::swap(fields[i - 1], fields[page.pick(i)]);
    const int rows = page.between(3, 6);
    const bool numeric_only = page.chance(kNumericGridRate);
    auto value = [&page, numeric_only](const FormField& f) {
      return f.type == ValueType::kNumber || numeric_only ? digits(page, page.between(2, 6))
                                                          : page.choose(kStatusWords);
    };
    for (int r = 0; r < rows; ++r) {
      const FormField& left = kFormFields[fields[2 * r]];
      const FormField& right = kFormFields[fields[2 * r + 1]];
      page.word(left.label, 0.06, y);
      page.word(value(left), 0.26, y);
      page.word(right.label, 0.52, y);
      page.word(value(right), 0.72, y);
      y += 0.035;
    }
    placed.structures.insert("table");
    placed.substructures.insert("tabular_grid");
  }

  const bool has_total = page.chance(kFormTotalRate);
  if (has_total && keep(page, noise, {"total"}, noise.drop_rate)) {
    y += 0.03;
    const double amount = page.between(1000, 90000) / 100.0;
    page.word("Total:", 0.52, y, true);
    page.word(money(amount), 0.72, y);
    y += 0.03;
    page.word("Tax:", 0.52, y, true);
    page.word(money(std::round(amount * 20.0) / 100.0), 0.72, y);
    placed.structures.insert("total");
    placed.substructures.insert("totals_line");
  }

  if (keep(page, noise, {"signature"}, noise.drop_rate)) place_signature(page, placed);
  return placed;
}

Placement build_letter(PageBuilder& page, const NoiseSpec& noise) {
  Placement placed;
  if (keep(page, noise, {"header"}, noise.drop_rate)) place_header(page, placed, "", "");
  if (keep(page, noise, {"address"}, noise.drop_rate)) {
    place_postal_address(page, placed, 0.55, 0.15);
  }

  double y = 0.28;
  if (keep(page, noise, {"letter_body"}, 0.0)) {
    page.words({"Dear", "Sir,"}, 0.08, y, {false, true});
    y += 0.035;
    const int paragraphs = page.between(2, 3);
    for (int p = 0; p < paragraphs; ++p) {
      const int lines = page.between(3, 5);
      for (int l = 0; l < lines; ++l) {
        place_text_line(page, 0.08, y, l + 1 == lines);
        y += 0.025;
      }
      y += 0.015;
    }
    y += 0.01;
    page.words({"Yours", "sincerely,"}, 0.08, y);
    placed.structures.insert("letter_body");
    placed.substructures.insert("paragraph");
  }

  const bool has_total = page.chance(kLetterTotalRate);
  if (has_total && keep(page, noise, {"total"}, noise.drop_rate)) {
    const double amount = page.between(1000, 90000) / 100.0;
    y += 0.04;
    page.word("Total", 0.55, y, true);
    page.right_aligned(money(amount), 0.92, y);
    placed.structures.insert("total");
    placed.substructures.insert("totals_line");
  }

  if (keep(page, noise, {"signature"}, noise.drop_rate)) place_signature(page, placed);
  return placed;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::string("generate: ") + what + " outside [0,1]");
  }
}

}  // namespace

Corpus generate(const GenSpec& spec) {
  check_probability(spec.noise.drop_rate, "drop_rate");
  check_probability(spec.noise.distort_rate, "distort_rate");
  for (const auto& [name, p] : spec.noise.drop_overrides) check_probability(p, name.c_str());
  if (!(spec.noise.jitter >= 0.0) || !std::isfinite(spec.noise.jitter)) {
    throw Error(ErrorCode::kInvalidArgument, "generate: jitter must be finite and >= 0");
  }

  std::vector<std::string> classes;
  classes.insert(classes.end(), spec.invoices, "invoice");
  classes.insert(classes.end(), spec.forms, "form");
  classes.insert(classes.end(), spec.letters, "letter");
  std::mt19937_64 order_rng(detail::mix_seed(spec.seed));
  for (std::size_t i = classes.size(); i > 1; --i) {
    const auto j = std::min(i - 1, static_cast<std::size_t>(detail::uniform01(order_rng) *
                                                            static_cast<double>(i)));
    std::swap(classes[i - 1], classes[j]);
  }

  Corpus corpus;
  corpus.reserve(classes.size());
  for (std::size_t index = 0; index < classes.size(); ++index) {
    std::mt19937_64 rng(detail::mix_seed(spec.seed ^ detail::mix_seed(index + 1)));
    PageBuilder page(rng, spec.noise);
    const std::string& cls = classes[index];
    Placement placed = cls == "invoice" ? build_invoice(page, spec.noise)
                       : cls == "form"  ? build_form(page, spec.noise)
                                        : build_letter(page, spec.noise);
    char id[64];
    std::snprintf(id, sizeof id, "%s-%04zu", spec.id_prefix.c_str(), index);
    DocumentInstance doc;
    doc.id = id;
    doc.tokens = page.finish();
    doc.labels = GroundTruth{cls,
                             {placed.structures.begin(), placed.structures.end()},
                             {placed.substructures.begin(), placed.substructures.end()}};
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace tnn
