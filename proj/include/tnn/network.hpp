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

// The transparent network: three masked monolayer networks in cascade,
// trained one at a time with the delta rule.

#ifndef TNN_NETWORK_HPP_
#define TNN_NETWORK_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tnn/document.hpp"
#include "tnn/features.hpp"
#include "tnn/topology.hpp"

namespace tnn {

// Logistic function. Throws Error(kInvalidArgument) on a non-finite input.
double sigmoid(double x);

// s * (1 - s). Throws Error(kInvalidArgument) unless 0 < s < 1.
double sigmoid_prime_from_output(double s);

// sigmoid(sum_i weights[i] * inputs[i] - threshold).
double neuron_activation(std::span<const double> inputs, std::span<const double> weights,
                         double threshold);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Hyperparams {
  double mu = 0.5;        // correction step
  double epsilon = 0.01;  // stop once the epoch MSE drops below this
  std::size_t max_epochs = 1000;

  bool operator==(const Hyperparams&) const = default;
};

// One NN1. weights(j, k) joins input j to output k and stays exactly zero
// wherever mask(j, k) == 0.
struct LayerNetwork {
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  Matrix weights;
  std::vector<unsigned char> mask;  // row-major, same shape as weights
  std::vector<double> thresholds;

  std::size_t input_size() const { return input_names.size(); }
  std::size_t output_size() const { return output_names.size(); }
  bool linked(std::size_t j, std::size_t k) const { return mask[j * output_size() + k] != 0; }
  std::size_t link_count() const;

  bool operator==(const LayerNetwork&) const = default;
};

// Zero-weight layer between `from` and the next layer of the topology.
LayerNetwork make_layer(const Topology& topology, Layer from);

// Fills linked weights and every threshold with uniform values in
// [-0.5, 0.5] drawn from `seed`.
void randomize_layer(LayerNetwork& net, std::uint64_t seed);

std::vector<double> forward_layer(const LayerNetwork& net, std::span<const double> inputs);

struct TrainingSample {
  std::vector<double> input;
  std::vector<double> target;
};

struct TrainingStats {
  std::size_t samples = 0;
  std::size_t epochs = 0;
  // Per-sample correction passes: samples * epochs.
  std::uint64_t update_passes = 0;
  // Individual linked-weight updates: samples * linked weights * epochs.
  std::uint64_t weight_updates = 0;
  double final_mse = 0.0;
  bool converged = false;

  bool operator==(const TrainingStats&) const = default;
};

// Online delta rule. For each sample and output k: E_k = target - S_k,
// delta_k = S_k (1 - S_k) E_k, W_jk += mu * S_j * delta_k on linked pairs,
// and the threshold moves as a weight on a constant -1 input.
TrainingStats train_nn1(LayerNetwork& net, std::span<const TrainingSample> samples,
                        const Hyperparams& hyper);

struct ActivationTrace {
  std::vector<double> elements;
  std::vector<double> substructures;
  std::vector<double> structures;
  std::vector<double> documents;

  bool operator==(const ActivationTrace&) const = default;
};

struct TnnTrainingSummary {
  TrainingStats substructures;  // NN1 elements -> substructures
  TrainingStats structures;     // NN1 substructures -> structures
  TrainingStats documents;      // NN1 structures -> documents
  std::vector<std::size_t> class_counts;  // training documents per class

  std::uint64_t total_update_passes() const;
  std::uint64_t total_weight_updates() const;

  bool operator==(const TnnTrainingSummary&) const = default;
};

struct TnnModel {
  Topology topology;
  FeatureExtractor features;
  LayerNetwork to_substructures;
  LayerNetwork to_structures;
  LayerNetwork to_documents;
  Hyperparams hyper;
  std::uint64_t seed = 0;
  TnnTrainingSummary training;

  bool operator==(const TnnModel&) const = default;
};

// Zero-weight cascade. Throws Error(kTopologyMismatch) if the extractor set
// does not cover exactly the topology's element layer.
TnnModel make_tnn(Topology topology, FeatureExtractor features, Hyperparams hyper = {},
                  std::uint64_t seed = 0);

ActivationTrace forward_tnn(const TnnModel& model, std::span<const double> elements);
ActivationTrace forward_tnn(const TnnModel& model, const ElementVector& elements);

// Trains the three NN1s separately and injects them into the cascade. The
// first learns substructures from level-1 element values; the other two
// learn from the ground-truth vector of the layer below. Throws
// Error(kValidation) naming the first unlabeled document.
TnnTrainingSummary train_tnn(TnnModel& model, const Corpus& corpus);

std::string serialize_model(const TnnModel& model);
TnnModel parse_model(std::string_view json_text);
void save_model(const TnnModel& model, const std::filesystem::path& path);
TnnModel load_model(const std::filesystem::path& path);

}  // namespace tnn

#endif  // TNN_NETWORK_HPP_
