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

#include "tnn/mlp.hpp"

#include <algorithm>
#include <random>

#include "json_codec.hpp"
#include "tnn/error.hpp"
#include "util.hpp"

namespace tnn {
namespace {

std::vector<double> dense_sigmoid(const Matrix& w, const std::vector<double>& b,
                                  std::span<const double> in) {
  std::vector<double> out(w.cols());
  for (std::size_t o = 0; o < w.cols(); ++o) {
    double net = b[o];
    for (std::size_t i = 0; i < w.rows(); ++i) net += w(i, o) * in[i];
    out[o] = sigmoid(net);
  }
  return out;
}

}  // namespace

MlpModel make_mlp(const Topology& topology, FeatureExtractor features, Hyperparams hyper,
                  std::uint64_t seed) {
  // Same element order as the transparent network.
  TnnModel shape = make_tnn(topology, std::move(features));
  MlpModel m;
  m.element_names = topology.elements();
  m.class_names = topology.documents();
  m.sizes = {topology.elements().size(), topology.substructures().size(),
             topology.structures().size(), topology.documents().size()};
  m.features = std::move(shape.features);
  m.hyper = hyper;
  m.seed = seed;
  m.class_counts.assign(m.class_names.size(), 0);

  std::mt19937_64 rng(detail::mix_seed(seed));
  for (std::size_t l = 0; l < 3; ++l) {
    m.weights[l] = Matrix(m.sizes[l], m.sizes[l + 1]);
    for (double& w : m.weights[l].data()) w = detail::uniform_symmetric(rng);
    m.biases[l].resize(m.sizes[l + 1]);
    for (double& b : m.biases[l]) b = detail::uniform_symmetric(rng);
  }
  return m;
}

std::array<std::vector<double>, 3> mlp_layers(const MlpModel& model,
                                              std::span<const double> input) {
  if (input.size() != model.sizes[0]) {
    throw Error(ErrorCode::kInvalidArgument, "forward_mlp: expected " +
                                                 std::to_string(model.sizes[0]) +
                                                 " inputs, got " + std::to_string(input.size()));
  }
  std::array<std::vector<double>, 3> a;
  a[0] = dense_sigmoid(model.weights[0], model.biases[0], input);
  a[1] = dense_sigmoid(model.weights[1], model.biases[1], a[0]);
  a[2] = dense_sigmoid(model.weights[2], model.biases[2], a[1]);
  return a;
}

std::vector<double> forward_mlp(const MlpModel& model, std::span<const double> input) {
  return mlp_layers(model, input)[2];
}

std::vector<double> forward_mlp(const MlpModel& model, const ElementVector& elements) {
  if (elements.names != model.element_names) {
    throw Error(ErrorCode::kInvalidArgument,
                "forward_mlp: element vector does not match the input layer");
  }
  return forward_mlp(model, std::span<const double>(elements.values));
}

MlpGradient mlp_gradient(const MlpModel& model, std::span<const double> input,
                         std::span<const double> target) {
  if (target.size() != model.sizes[3]) {
    throw Error(ErrorCode::kInvalidArgument, "mlp_gradient: target size mismatch");
  }
  const auto a = mlp_layers(model, input);
  MlpGradient g;

  // delta[l][o] = dLoss / dnet for output o of layer l.
  std::array<std::vector<double>, 3> delta;
  delta[2].resize(model.sizes[3]);
  for (std::size_t k = 0; k < model.sizes[3]; ++k) {
    delta[2][k] = (a[2][k] - target[k]) * a[2][k] * (1.0 - a[2][k]);
  }
  for (std::size_t l = 2; l-- > 0;) {
    const Matrix& w = model.weights[l + 1];
    delta[l].resize(model.sizes[l + 1]);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      double back = 0.0;
      for (std::size_t o = 0; o < w.cols(); ++o) back += w(i, o) * delta[l + 1][o];
      delta[l][i] = back * a[l][i] * (1.0 - a[l][i]);
    }
  }

  for (std::size_t l = 0; l < 3; ++l) {
    std::span<const double> in = l == 0 ? input : std::span<const double>(a[l - 1]);
    g.weights[l] = Matrix(model.sizes[l], model.sizes[l + 1]);
    for (std::size_t i = 0; i < model.sizes[l]; ++i) {
      for (std::size_t o = 0; o < model.sizes[l + 1]; ++o) g.weights[l](i, o) = in[i] * delta[l][o];
    }
    g.biases[l] = delta[l];
  }
  return g;
}

TrainingStats train_mlp(MlpModel& model, std::span<const TrainingSample> samples) {
  if (samples.empty()) throw Error(ErrorCode::kValidation, "train_mlp: empty training corpus");
  TrainingStats stats;
  stats.samples = samples.size();
  std::uint64_t parameters = 0;
  for (std::size_t l = 0; l < 3; ++l) parameters += model.weights[l].data().size();

  while (stats.epochs < model.hyper.max_epochs) {
    double sse = 0.0;
    for (const auto& sample : samples) {
      const auto out = forward_mlp(model, sample.input);
      for (std::size_t k = 0; k < out.size(); ++k) {
        const double e = sample.target[k] - out[k];
        sse += e * e;
      }
      const auto g = mlp_gradient(model, sample.input, sample.target);
      for (std::size_t l = 0; l < 3; ++l) {
        auto w = model.weights[l].data();
        auto gw = g.weights[l].data();
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= model.hyper.mu * gw[i];
        for (std::size_t o = 0; o < model.biases[l].size(); ++o) {
          model.biases[l][o] -= model.hyper.mu * g.biases[l][o];
        }
      }
      ++stats.update_passes;
      stats.weight_updates += parameters;
    }
    ++stats.epochs;
    stats.final_mse = sse / static_cast<double>(samples.size() * model.sizes[3]);
    if (stats.final_mse < model.hyper.epsilon) {
      stats.converged = true;
      break;
    }
  }
  model.training = stats;
  return stats;
}

TrainingStats train_mlp(MlpModel& model, const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kValidation, "train_mlp: empty training corpus");
  std::vector<TrainingSample> samples;
  std::vector<std::size_t> counts(model.class_names.size(), 0);
  for (const auto& doc : corpus) {
    if (!doc.labels) {
      throw Error(ErrorCode::kValidation, "train_mlp: document '" + doc.id + "' has no labels");
    }
    auto it = std::find(model.class_names.begin(), model.class_names.end(),
                        doc.labels->document_class);
    if (it == model.class_names.end()) {
      throw Error(ErrorCode::kValidation, "train_mlp: document '" + doc.id +
                                              "' has unknown class '" +
                                              doc.labels->document_class + "'");
    }
    const auto cls = static_cast<std::size_t>(it - model.class_names.begin());
    ++counts[cls];
    std::vector<double> target(model.class_names.size(), 0.0);
    target[cls] = 1.0;
    samples.push_back({model.features.extract_all(doc).values, std::move(target)});
  }
  auto stats = train_mlp(model, std::span<const TrainingSample>(samples));
  model.class_counts = std::move(counts);
  return stats;
}

std::string serialize_mlp(const MlpModel& model) {
  using codec::json;
  json layers = json::array();
  for (std::size_t l = 0; l < 3; ++l) {
    layers.push_back(
        {{"weights", codec::encode(model.weights[l])}, {"biases", model.biases[l]}});
  }
  json root = {{"format_version", codec::kFormatVersion},
               {"kind", "mlp"},
               {"elements", model.element_names},
               {"classes", model.class_names},
               {"sizes", model.sizes},
               {"extractors", codec::encode(model.features)},
               {"hyperparams", codec::encode(model.hyper)},
               {"seed", model.seed},
               {"layers", std::move(layers)},
               {"training", codec::encode(model.training)},
               {"class_counts", model.class_counts}};
  return root.dump(1) + "\n";
}

MlpModel parse_mlp(std::string_view json_text) {
  using codec::json;
  const json root = codec::parse_json(json_text, "model");
  codec::check_envelope(root, "mlp");
  MlpModel m;
  m.element_names = codec::get<std::vector<std::string>>(root, "elements", "model");
  m.class_names = codec::get<std::vector<std::string>>(root, "classes", "model");
  m.sizes = codec::get<std::array<std::size_t, 4>>(root, "sizes", "model");
  if (m.sizes[0] != m.element_names.size() || m.sizes[3] != m.class_names.size()) {
    throw Error(ErrorCode::kValidation, "model: layer sizes disagree with the neuron names");
  }
  m.features = codec::decode_features(codec::get<json>(root, "extractors", "model"));
  if (m.features.element_names() != m.element_names) {
    throw Error(ErrorCode::kTopologyMismatch, "model: extractors disagree with the input layer");
  }
  m.hyper = codec::decode_hyperparams(codec::get<json>(root, "hyperparams", "model"), {});
  m.seed = codec::get<std::uint64_t>(root, "seed", "model");
  const auto layers = codec::get<json>(root, "layers", "model");
  if (!layers.is_array() || layers.size() != 3) {
    throw Error(ErrorCode::kValidation, "model: expected three layers");
  }
  for (std::size_t l = 0; l < 3; ++l) {
    const std::string where = "model layer " + std::to_string(l);
    m.weights[l] = codec::decode_matrix(codec::get<json>(layers[l], "weights", where),
                                        m.sizes[l], m.sizes[l + 1], where);
    m.biases[l] = codec::get<std::vector<double>>(layers[l], "biases", where);
    if (m.biases[l].size() != m.sizes[l + 1]) {
      throw Error(ErrorCode::kValidation, where + ": bias count disagrees with the layer size");
    }
  }
  if (root.contains("training")) m.training = codec::decode_stats(root["training"]);
  m.class_counts = root.contains("class_counts")
                       ? codec::get<std::vector<std::size_t>>(root, "class_counts", "model")
                       : std::vector<std::size_t>(m.class_names.size(), 0);
  return m;
}

void save_mlp(const MlpModel& model, const std::filesystem::path& path) {
  detail::write_file(path, serialize_mlp(model), "model");
}

MlpModel load_mlp(const std::filesystem::path& path) {
  return parse_mlp(detail::read_file(path, "model"));
}

}  // namespace tnn
