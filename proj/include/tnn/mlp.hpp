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

// Black-box baseline: same input and output layers as the transparent
// network, but the two middle layers are hidden and fully connected.
// It only ranks classes. There is no structure output and no refinement hook.

#ifndef TNN_MLP_HPP_
#define TNN_MLP_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tnn/document.hpp"
#include "tnn/features.hpp"
#include "tnn/network.hpp"

namespace tnn {

struct MlpModel {
  std::vector<std::string> element_names;
  std::vector<std::string> class_names;
  std::array<std::size_t, 4> sizes{};  // input, hidden1, hidden2, output
  std::array<Matrix, 3> weights;       // weights[l](i, o): layer l input i -> output o
  std::array<std::vector<double>, 3> biases;
  FeatureExtractor features = FeatureExtractor::default_extractors();
  Hyperparams hyper;
  std::uint64_t seed = 0;
  TrainingStats training;
  std::vector<std::size_t> class_counts;

  bool operator==(const MlpModel&) const = default;
};

// Hidden sizes follow the topology's substructure and structure counts.
// Weights and biases are uniform in [-0.5, 0.5] from `seed`.
MlpModel make_mlp(const Topology& topology, FeatureExtractor features, Hyperparams hyper,
                  std::uint64_t seed);

// Activations of the three layers; back() is the class vector.
std::array<std::vector<double>, 3> mlp_layers(const MlpModel& model,
                                              std::span<const double> input);

std::vector<double> forward_mlp(const MlpModel& model, std::span<const double> input);
std::vector<double> forward_mlp(const MlpModel& model, const ElementVector& elements);

struct MlpGradient {
  std::array<Matrix, 3> weights;
  std::array<std::vector<double>, 3> biases;
};

// Gradient of 0.5 * sum_k (target_k - output_k)^2 with respect to every
// weight and bias.
MlpGradient mlp_gradient(const MlpModel& model, std::span<const double> input,
                         std::span<const double> target);

// Online gradient descent over `samples` in order. update_passes counts
// backward passes.
TrainingStats train_mlp(MlpModel& model, std::span<const TrainingSample> samples);

// Builds samples from level-1 element values and one-hot class targets.
// Throws Error(kValidation) on an empty corpus or an unlabeled document.
TrainingStats train_mlp(MlpModel& model, const Corpus& corpus);

std::string serialize_mlp(const MlpModel& model);
MlpModel parse_mlp(std::string_view json_text);
void save_mlp(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_mlp(const std::filesystem::path& path);

}  // namespace tnn

#endif  // TNN_MLP_HPP_
