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

// Global-local recognition loop.
//
// Elements vote upward to a document class. When the vote is ambiguous the
// loop walks back down to the element neurons that carry the most uncertain
// weight toward the two leading classes, re-extracts them one level deeper
// and propagates again.

#ifndef TNN_RECOGNIZER_HPP_
#define TNN_RECOGNIZER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "tnn/network.hpp"

namespace tnn {

struct RecognizeParams {
  double tau_accept = 0.6;
  double tau_margin = 0.15;
  double tau_struct = 0.5;
  std::size_t max_passes = 3;
  std::size_t blame_budget = 3;

  bool operator==(const RecognizeParams&) const = default;
};

enum class RecognitionStatus { kRecognized, kRejected };

std::string_view to_string(RecognitionStatus status);

struct ExtractedStructure {
  std::string name;
  double activation = 0.0;
  std::optional<bool> linked_to_winner;  // empty when nothing was recognized

  bool operator==(const ExtractedStructure&) const = default;
};

struct PassRecord {
  std::vector<int> levels;  // element levels used for this pass
  ActivationTrace trace;
  std::vector<std::string> blamed;  // refined before the next pass

  bool operator==(const PassRecord&) const = default;
};

struct RecognitionResult {
  RecognitionStatus status = RecognitionStatus::kRejected;
  std::optional<std::string> winning_class;
  std::string top_class;  // argmax, reported even when rejected
  double confidence = 0.0;
  double margin = 0.0;
  std::vector<ExtractedStructure> structures;
  std::vector<PassRecord> passes;

  bool operator==(const RecognitionResult&) const = default;
};

// Scores each element by (1 - |2a - 1|) times the summed |W| products over
// every element -> substructure -> structure -> document path ending at one
// of `top_classes`.
std::vector<double> blame_scores(const ActivationTrace& trace, const TnnModel& model,
                                 const std::vector<std::size_t>& top_classes);

// Highest-scoring elements (positive score, below their maximum level), at
// most `budget`, ordered by score then element order.
std::vector<std::string> blame_elements(const ActivationTrace& trace, const TnnModel& model,
                                        const std::vector<std::size_t>& top_classes,
                                        const std::vector<int>& current_levels,
                                        std::size_t budget);

std::vector<ExtractedStructure> extract_structures(const ActivationTrace& trace,
                                                   const TnnModel& model,
                                                   std::optional<std::size_t> winning_class,
                                                   double tau_struct);

RecognitionResult recognize(const TnnModel& model, const DocumentInstance& doc,
                            const RecognizeParams& params = {});

std::string serialize_result(const RecognitionResult& result, const TnnModel& model);

}  // namespace tnn

#endif  // TNN_RECOGNIZER_HPP_
