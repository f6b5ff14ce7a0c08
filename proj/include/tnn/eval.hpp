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

// Recognition-rate tables for both networks and the training-cost ratio.

#ifndef TNN_EVAL_HPP_
#define TNN_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnn/mlp.hpp"
#include "tnn/recognizer.hpp"

namespace tnn {

struct ClassRow {
  std::string name;
  std::size_t trained = 0;
  std::size_t tested = 0;
  std::size_t recognized = 0;

  // recognized / tested, or nullopt when nothing was tested.
  std::optional<double> rate() const;

  bool operator==(const ClassRow&) const = default;
};

struct StructureRow {
  std::string name;
  std::size_t tested = 0;
  std::size_t recognized = 0;

  std::optional<double> rate() const;

  bool operator==(const StructureRow&) const = default;
};

// counts[true class][predicted]; the last predicted column is "reject".
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::size_t>> counts;

  bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassTable {
  std::vector<ClassRow> rows;
  ClassRow total;  // column sums
  ConfusionMatrix confusion;

  bool operator==(const ClassTable&) const = default;
};

struct StructureTable {
  std::vector<StructureRow> rows;
  StructureRow total;
  // Documents rejected by the loop that still yielded at least one correctly
  // extracted structure.
  std::size_t rejected_with_correct_structures = 0;

  bool operator==(const StructureTable&) const = default;
};

struct TnnEvaluation {
  ClassTable documents;
  StructureTable structures;

  bool operator==(const TnnEvaluation&) const = default;
};

struct CostComparison {
  std::uint64_t tnn_update_passes = 0;
  std::uint64_t tnn_weight_updates = 0;
  std::size_t tnn_samples = 0;
  std::uint64_t mlp_backward_passes = 0;
  std::size_t mlp_epochs = 0;
  std::size_t mlp_samples = 0;
  double ratio = 0.0;  // mlp_backward_passes / tnn_update_passes

  bool operator==(const CostComparison&) const = default;
};

struct EvalReport {
  std::optional<TnnEvaluation> tnn;
  std::optional<ClassTable> mlp;
  std::optional<CostComparison> cost;

  bool operator==(const EvalReport&) const = default;
};

// Throws Error(kValidation) on an unlabeled test document.
TnnEvaluation evaluate_tnn(const TnnModel& model, const Corpus& test,
                           const RecognizeParams& params = {});
ClassTable evaluate_mlp(const MlpModel& model, const Corpus& test);

CostComparison compare_training_cost(const TnnTrainingSummary& tnn, const TrainingStats& mlp);

// Display names for table rows: "invoices", "invoice body", ...
std::string display_class_name(const std::string& name);
std::string display_structure_name(const std::string& name);

std::string render_report(const EvalReport& report);
std::string serialize_report(const EvalReport& report);
EvalReport parse_report(std::string_view json_text);

}  // namespace tnn

#endif  // TNN_EVAL_HPP_
