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

#include "tnn/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json_codec.hpp"
#include "tnn/error.hpp"

namespace tnn {
namespace {

using codec::json;

std::optional<double> ratio_of(std::size_t recognized, std::size_t tested) {
  if (tested == 0) return std::nullopt;
  return static_cast<double>(recognized) / static_cast<double>(tested);
}

const GroundTruth& labels_of(const DocumentInstance& doc, const char* what) {
  if (!doc.labels) {
    throw Error(ErrorCode::kValidation,
                std::string(what) + ": test document '" + doc.id + "' has no labels");
  }
  return *doc.labels;
}

std::size_t class_index(const std::vector<std::string>& classes, const DocumentInstance& doc,
                        const std::string& cls, const char* what) {
  auto it = std::find(classes.begin(), classes.end(), cls);
  if (it == classes.end()) {
    throw Error(ErrorCode::kValidation, std::string(what) + ": document '" + doc.id +
                                            "' has unknown class '" + cls + "'");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

ClassTable empty_table(const std::vector<std::string>& classes,
                       const std::vector<std::size_t>& trained) {
  ClassTable table;
  table.total.name = "all";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    ClassRow row;
    row.name = classes[i];
    row.trained = i < trained.size() ? trained[i] : 0;
    table.total.trained += row.trained;
    table.rows.push_back(std::move(row));
  }
  table.confusion.classes = classes;
  table.confusion.counts.assign(classes.size(),
                                std::vector<std::size_t>(classes.size() + 1, 0));
  return table;
}

// predicted == classes.size() encodes a reject.
void tally(ClassTable& table, std::size_t truth, std::size_t predicted) {
  ++table.rows[truth].tested;
  ++table.total.tested;
  if (predicted == truth) {
    ++table.rows[truth].recognized;
    ++table.total.recognized;
  }
  ++table.confusion.counts[truth][predicted];
}

std::string rate_text(std::optional<double> rate) {
  if (!rate) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", *rate * 100.0);
  return buf;
}

// Plain left-aligned text table.
std::string layout(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

std::string render_classes(const ClassTable& table, const std::string& title) {
  std::vector<std::vector<std::string>> cells{
      {"types of document", "number of apprentices document", "number of documents tested",
       "number of recognized documents", "recognition rate"}};
  auto add = [&cells](const ClassRow& row, const std::string& name) {
    cells.push_back({name, std::to_string(row.trained), std::to_string(row.tested),
                     std::to_string(row.recognized), rate_text(row.rate())});
  };
  for (const auto& row : table.rows) add(row, display_class_name(row.name));
  add(table.total, "all documents");

  std::vector<std::vector<std::string>> confusion{{"true \\ predicted"}};
  for (const auto& c : table.confusion.classes) confusion[0].push_back(c);
  confusion[0].push_back("reject");
  for (std::size_t i = 0; i < table.confusion.counts.size(); ++i) {
    std::vector<std::string> row{table.confusion.classes[i]};
    for (auto n : table.confusion.counts[i]) row.push_back(std::to_string(n));
    confusion.push_back(std::move(row));
  }
  return title + "\n" + layout(cells) + "\nconfusion\n" + layout(confusion);
}

std::string render_structures(const StructureTable& table) {
  std::vector<std::vector<std::string>> cells{{"types of structures", "number of structures tested",
                                               "number of recognized structures",
                                               "recognition rate"}};
  auto add = [&cells](const StructureRow& row, const std::string& name) {
    cells.push_back({name, std::to_string(row.tested), std::to_string(row.recognized),
                     rate_text(row.rate())});
  };
  for (const auto& row : table.rows) add(row, display_structure_name(row.name));
  add(table.total, "all structures");
  return "TNN structures\n" + layout(cells) +
         "rejected documents with a correct structure set: " +
         std::to_string(table.rejected_with_correct_structures) + "\n";
}

json encode_row(const ClassRow& row) {
  return {{"name", row.name},
          {"trained", row.trained},
          {"tested", row.tested},
          {"recognized", row.recognized},
          {"rate", row.rate() ? json(*row.rate()) : json(nullptr)}};
}

json encode_row(const StructureRow& row) {
  return {{"name", row.name},
          {"tested", row.tested},
          {"recognized", row.recognized},
          {"rate", row.rate() ? json(*row.rate()) : json(nullptr)}};
}

json encode_table(const ClassTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back(encode_row(row));
  return {{"rows", std::move(rows)},
          {"total", encode_row(table.total)},
          {"confusion",
           {{"classes", table.confusion.classes}, {"counts", table.confusion.counts}}}};
}

json encode_table(const StructureTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) rows.push_back(encode_row(row));
  return {{"rows", std::move(rows)},
          {"total", encode_row(table.total)},
          {"rejected_with_correct_structures", table.rejected_with_correct_structures}};
}

ClassRow decode_class_row(const json& j) {
  const std::string where = "report row";
  return {codec::get<std::string>(j, "name", where), codec::get<std::size_t>(j, "trained", where),
          codec::get<std::size_t>(j, "tested", where),
          codec::get<std::size_t>(j, "recognized", where)};
}

StructureRow decode_structure_row(const json& j) {
  const std::string where = "report row";
  return {codec::get<std::string>(j, "name", where), codec::get<std::size_t>(j, "tested", where),
          codec::get<std::size_t>(j, "recognized", where)};
}

ClassTable decode_class_table(const json& j) {
  ClassTable table;
  for (const auto& row : codec::get<json>(j, "rows", "report table")) {
    table.rows.push_back(decode_class_row(row));
  }
  table.total = decode_class_row(codec::get<json>(j, "total", "report table"));
  const json confusion = codec::get<json>(j, "confusion", "report table");
  table.confusion.classes = codec::get<std::vector<std::string>>(confusion, "classes", "confusion");
  table.confusion.counts =
      codec::get<std::vector<std::vector<std::size_t>>>(confusion, "counts", "confusion");
  return table;
}

StructureTable decode_structure_table(const json& j) {
  StructureTable table;
  for (const auto& row : codec::get<json>(j, "rows", "report table")) {
    table.rows.push_back(decode_structure_row(row));
  }
  table.total = decode_structure_row(codec::get<json>(j, "total", "report table"));
  table.rejected_with_correct_structures =
      codec::get<std::size_t>(j, "rejected_with_correct_structures", "report table");
  return table;
}

}  // namespace

std::optional<double> ClassRow::rate() const { return ratio_of(recognized, tested); }
std::optional<double> StructureRow::rate() const { return ratio_of(recognized, tested); }

TnnEvaluation evaluate_tnn(const TnnModel& model, const Corpus& test,
                           const RecognizeParams& params) {
  const auto& classes = model.topology.documents();
  const auto& structures = model.topology.structures();
  TnnEvaluation eval;
  eval.documents = empty_table(classes, model.training.class_counts);
  eval.structures.total.name = "all";
  for (const auto& s : structures) eval.structures.rows.push_back({s, 0, 0});

  for (const auto& doc : test) {
    const GroundTruth& truth = labels_of(doc, "evaluate_tnn");
    const std::size_t expected = class_index(classes, doc, truth.document_class, "evaluate_tnn");
    const RecognitionResult result = recognize(model, doc, params);

    std::size_t predicted = classes.size();
    if (result.status == RecognitionStatus::kRecognized) {
      predicted = class_index(classes, doc, *result.winning_class, "evaluate_tnn");
    }
    tally(eval.documents, expected, predicted);

    auto extracted = [&result](const std::string& name) {
      return std::any_of(result.structures.begin(), result.structures.end(),
                         [&name](const ExtractedStructure& s) { return s.name == name; });
    };
    for (auto& row : eval.structures.rows) {
      if (!truth.has_structure(row.name)) continue;
      ++row.tested;
      ++eval.structures.total.tested;
      if (extracted(row.name)) {
        ++row.recognized;
        ++eval.structures.total.recognized;
      }
    }
    if (result.status == RecognitionStatus::kRejected &&
        std::any_of(result.structures.begin(), result.structures.end(),
                    [&truth](const ExtractedStructure& s) { return truth.has_structure(s.name); })) {
      ++eval.structures.rejected_with_correct_structures;
    }
  }
  return eval;
}

ClassTable evaluate_mlp(const MlpModel& model, const Corpus& test) {
  const auto& classes = model.class_names;
  ClassTable table = empty_table(classes, model.class_counts);
  for (const auto& doc : test) {
    const GroundTruth& truth = labels_of(doc, "evaluate_mlp");
    const std::size_t expected = class_index(classes, doc, truth.document_class, "evaluate_mlp");
    const auto out = forward_mlp(model, model.features.extract_all(doc));
    const auto best = static_cast<std::size_t>(std::max_element(out.begin(), out.end()) -
                                               out.begin());
    tally(table, expected, best);
  }
  return table;
}

CostComparison compare_training_cost(const TnnTrainingSummary& tnn, const TrainingStats& mlp) {
  CostComparison cost;
  cost.tnn_update_passes = tnn.total_update_passes();
  cost.tnn_weight_updates = tnn.total_weight_updates();
  cost.tnn_samples = tnn.substructures.samples;
  cost.mlp_backward_passes = mlp.update_passes;
  cost.mlp_epochs = mlp.epochs;
  cost.mlp_samples = mlp.samples;
  cost.ratio = cost.tnn_update_passes == 0
                   ? 0.0
                   : static_cast<double>(cost.mlp_backward_passes) /
                         static_cast<double>(cost.tnn_update_passes);
  return cost;
}

std::string display_class_name(const std::string& name) {
  if (name.empty() || name.back() == 's') return name;
  return name + "s";
}

std::string display_structure_name(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string render_report(const EvalReport& report) {
  std::string out;
  if (report.tnn) {
    out += render_classes(report.tnn->documents, "TNN documents");
    out += "\n" + render_structures(report.tnn->structures);
  }
  if (report.mlp) {
    if (!out.empty()) out += "\n";
    out += render_classes(*report.mlp, "MLP documents");
  }
  if (report.cost) {
    const auto& c = *report.cost;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "\nTraining cost\n"
                  "TNN update passes: %llu (weight updates %llu, %zu samples)\n"
                  "MLP backward passes: %llu (%zu epochs, %zu samples)\n"
                  "ratio MLP/TNN: %.3f\n",
                  static_cast<unsigned long long>(c.tnn_update_passes),
                  static_cast<unsigned long long>(c.tnn_weight_updates), c.tnn_samples,
                  static_cast<unsigned long long>(c.mlp_backward_passes), c.mlp_epochs,
                  c.mlp_samples, c.ratio);
    out += buf;
  }
  return out;
}

std::string serialize_report(const EvalReport& report) {
  json root = {{"format_version", codec::kFormatVersion}, {"kind", "report"}};
  if (report.tnn) {
    root["tnn"] = {{"documents", encode_table(report.tnn->documents)},
                   {"structures", encode_table(report.tnn->structures)}};
  }
  if (report.mlp) root["mlp"] = encode_table(*report.mlp);
  if (report.cost) {
    const auto& c = *report.cost;
    root["cost"] = {{"tnn_update_passes", c.tnn_update_passes},
                    {"tnn_weight_updates", c.tnn_weight_updates},
                    {"tnn_samples", c.tnn_samples},
                    {"mlp_backward_passes", c.mlp_backward_passes},
                    {"mlp_epochs", c.mlp_epochs},
                    {"mlp_samples", c.mlp_samples},
                    {"ratio", c.ratio}};
  }
  return root.dump(2);
}

EvalReport parse_report(std::string_view json_text) {
  const json root = codec::parse_json(json_text, "report");
  codec::check_envelope(root, "report");
  EvalReport report;
  if (auto it = root.find("tnn"); it != root.end()) {
    report.tnn = TnnEvaluation{decode_class_table(codec::get<json>(*it, "documents", "tnn")),
                               decode_structure_table(codec::get<json>(*it, "structures", "tnn"))};
  }
  if (auto it = root.find("mlp"); it != root.end()) report.mlp = decode_class_table(*it);
  if (auto it = root.find("cost"); it != root.end()) {
    const std::string where = "cost";
    CostComparison c;
    c.tnn_update_passes = codec::get<std::uint64_t>(*it, "tnn_update_passes", where);
    c.tnn_weight_updates = codec::get<std::uint64_t>(*it, "tnn_weight_updates", where);
    c.tnn_samples = codec::get<std::size_t>(*it, "tnn_samples", where);
    c.mlp_backward_passes = codec::get<std::uint64_t>(*it, "mlp_backward_passes", where);
    c.mlp_epochs = codec::get<std::size_t>(*it, "mlp_epochs", where);
    c.mlp_samples = codec::get<std::size_t>(*it, "mlp_samples", where);
    c.ratio = codec::get<double>(*it, "ratio", where);
    report.cost = c;
  }
  return report;
}

}  // namespace tnn
