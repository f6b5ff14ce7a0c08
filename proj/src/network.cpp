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

#include "tnn/network.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json_codec.hpp"
#include "tnn/error.hpp"
#include "util.hpp"

namespace tnn {
namespace {

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": expected " +
                                                 std::to_string(want) + " values, got " +
                                                 std::to_string(got));
  }
}

std::vector<double> indicator(const std::vector<std::string>& names,
                              const std::vector<std::string>& present) {
  std::vector<double> v(names.size(), 0.0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (std::binary_search(present.begin(), present.end(), names[i])) v[i] = 1.0;
  }
  return v;
}

const LayerNetwork& layer_of(const TnnModel& model, std::size_t l) {
  switch (l) {
    case 0:
      return model.to_substructures;
    case 1:
      return model.to_structures;
    default:
      return model.to_documents;
  }
}

}  // namespace

double sigmoid(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "sigmoid: non-finite input");
  return 1.0 / (1.0 + std::exp(-x));
}

double sigmoid_prime_from_output(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigmoid_prime_from_output: output outside (0,1)");
  }
  return s * (1.0 - s);
}

double neuron_activation(std::span<const double> inputs, std::span<const double> weights,
                         double threshold) {
  check_size(weights.size(), inputs.size(), "neuron_activation");
  double net = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) net += weights[i] * inputs[i];
  return sigmoid(net - threshold);
}

std::size_t LayerNetwork::link_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

LayerNetwork make_layer(const Topology& topology, Layer from) {
  const auto to = static_cast<Layer>(static_cast<int>(from) + 1);
  LayerNetwork net;
  net.input_names = topology.names(from);
  net.output_names = topology.names(to);
  net.weights = Matrix(net.input_size(), net.output_size());
  net.mask = topology.mask(from);
  net.thresholds.assign(net.output_size(), 0.0);
  return net;
}

void randomize_layer(LayerNetwork& net, std::uint64_t seed) {
  std::mt19937_64 rng(detail::mix_seed(seed));
  for (std::size_t j = 0; j < net.input_size(); ++j) {
    for (std::size_t k = 0; k < net.output_size(); ++k) {
      const double w = detail::uniform_symmetric(rng);
      net.weights(j, k) = net.linked(j, k) ? w : 0.0;
    }
  }
  for (auto& theta : net.thresholds) theta = detail::uniform_symmetric(rng);
}

std::vector<double> forward_layer(const LayerNetwork& net, std::span<const double> inputs) {
  check_size(inputs.size(), net.input_size(), "forward_layer");
  std::vector<double> out(net.output_size());
  for (std::size_t k = 0; k < net.output_size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < net.input_size(); ++j) {
      if (net.linked(j, k)) sum += net.weights(j, k) * inputs[j];
    }
    out[k] = sigmoid(sum - net.thresholds[k]);
  }
  return out;
}

TrainingStats train_nn1(LayerNetwork& net, std::span<const TrainingSample> samples,
                        const Hyperparams& hyper) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "train_nn1: no samples");
  for (const auto& s : samples) {
    check_size(s.input.size(), net.input_size(), "train_nn1 input");
    check_size(s.target.size(), net.output_size(), "train_nn1 target");
    for (double t : s.target) {
      if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "train_nn1: target outside [0,1]");
      }
    }
  }

  TrainingStats stats;
  stats.samples = samples.size();
  const std::uint64_t links = net.link_count();
  std::vector<double> delta(net.output_size());
  while (stats.epochs < hyper.max_epochs) {
    double sse = 0.0;
    for (const auto& sample : samples) {
      const auto out = forward_layer(net, sample.input);
      for (std::size_t k = 0; k < net.output_size(); ++k) {
        const double error = sample.target[k] - out[k];
        sse += error * error;
        delta[k] = out[k] * (1.0 - out[k]) * error;
      }
      for (std::size_t j = 0; j < net.input_size(); ++j) {
        for (std::size_t k = 0; k < net.output_size(); ++k) {
          if (net.linked(j, k)) net.weights(j, k) += hyper.mu * sample.input[j] * delta[k];
        }
      }
      for (std::size_t k = 0; k < net.output_size(); ++k) {
        net.thresholds[k] += hyper.mu * -1.0 * delta[k];
      }
      ++stats.update_passes;
      stats.weight_updates += links;
    }
    ++stats.epochs;
    stats.final_mse = sse / static_cast<double>(samples.size() * net.output_size());
    if (stats.final_mse < hyper.epsilon) {
      stats.converged = true;
      break;
    }
  }
  return stats;
}

std::uint64_t TnnTrainingSummary::total_update_passes() const {
  return substructures.update_passes + structures.update_passes + documents.update_passes;
}

std::uint64_t TnnTrainingSummary::total_weight_updates() const {
  return substructures.weight_updates + structures.weight_updates + documents.weight_updates;
}

TnnModel make_tnn(Topology topology, FeatureExtractor features, Hyperparams hyper,
                  std::uint64_t seed) {
  // Reorder the extractors to follow the element layer.
  std::vector<ElementExtractor> ordered;
  const auto& available = features.extractors();
  for (const auto& name : topology.elements()) {
    auto it = std::find_if(available.begin(), available.end(),
                           [&](const ElementExtractor& e) { return e.element_name == name; });
    if (it == available.end()) {
      throw Error(ErrorCode::kTopologyMismatch, "element '" + name + "' has no extractor");
    }
    ordered.push_back(*it);
  }
  if (available.size() != ordered.size()) {
    throw Error(ErrorCode::kTopologyMismatch,
                "extractor set declares elements missing from the topology");
  }
  TnnModel model{std::move(topology), FeatureExtractor(std::move(ordered), features.params()),
                 {}, {}, {}, hyper, seed, {}};
  model.to_substructures = make_layer(model.topology, Layer::kElements);
  model.to_structures = make_layer(model.topology, Layer::kSubstructures);
  model.to_documents = make_layer(model.topology, Layer::kStructures);
  return model;
}

ActivationTrace forward_tnn(const TnnModel& model, std::span<const double> elements) {
  ActivationTrace trace;
  trace.elements.assign(elements.begin(), elements.end());
  trace.substructures = forward_layer(model.to_substructures, trace.elements);
  trace.structures = forward_layer(model.to_structures, trace.substructures);
  trace.documents = forward_layer(model.to_documents, trace.structures);
  return trace;
}

ActivationTrace forward_tnn(const TnnModel& model, const ElementVector& elements) {
  if (elements.names != model.topology.elements()) {
    throw Error(ErrorCode::kInvalidArgument,
                "forward_tnn: element vector does not match the element layer");
  }
  return forward_tnn(model, std::span<const double>(elements.values));
}

TnnTrainingSummary train_tnn(TnnModel& model, const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kValidation, "train_tnn: empty training corpus");
  const auto& topo = model.topology;
  for (const auto& doc : corpus) {
    if (!doc.labels) {
      throw Error(ErrorCode::kValidation, "train_tnn: document '" + doc.id + "' has no labels");
    }
    validate_document(doc, topo);
  }

  TnnTrainingSummary summary;
  summary.class_counts.assign(topo.documents().size(), 0);
  std::vector<TrainingSample> to_sub;
  std::vector<TrainingSample> to_struct;
  std::vector<TrainingSample> to_doc;
  for (const auto& doc : corpus) {
    const auto& gt = *doc.labels;
    const auto sub = indicator(topo.substructures(), gt.substructures);
    const auto str = indicator(topo.structures(), gt.structures);
    const auto cls = indicator(topo.documents(), {gt.document_class});
    ++summary.class_counts[*topo.index_of(Layer::kDocuments, gt.document_class)];
    to_sub.push_back({model.features.extract_all(doc).values, sub});
    to_struct.push_back({sub, str});
    to_doc.push_back({str, cls});
  }

  randomize_layer(model.to_substructures, model.seed);
  randomize_layer(model.to_structures, model.seed + 1);
  randomize_layer(model.to_documents, model.seed + 2);
  summary.substructures = train_nn1(model.to_substructures, to_sub, model.hyper);
  summary.structures = train_nn1(model.to_structures, to_struct, model.hyper);
  summary.documents = train_nn1(model.to_documents, to_doc, model.hyper);
  model.training = summary;
  return summary;
}

std::string serialize_model(const TnnModel& model) {
  using codec::json;
  json layers = json::array();
  for (std::size_t l = 0; l < 3; ++l) {
    const auto& net = layer_of(model, l);
    layers.push_back({{"from", std::string(to_string(static_cast<Layer>(l)))},
                      {"inputs", net.input_names},
                      {"outputs", net.output_names},
                      {"weights", codec::encode(net.weights)},
                      {"thresholds", net.thresholds}});
  }
  json training = {{"substructures", codec::encode(model.training.substructures)},
                   {"structures", codec::encode(model.training.structures)},
                   {"documents", codec::encode(model.training.documents)},
                   {"class_counts", model.training.class_counts}};
  json root = {{"format_version", codec::kFormatVersion},
               {"kind", "tnn"},
               {"topology", codec::encode(model.topology)},
               {"extractors", codec::encode(model.features)},
               {"hyperparams", codec::encode(model.hyper)},
               {"seed", model.seed},
               {"layers", std::move(layers)},
               {"training", std::move(training)}};
  return root.dump(1) + "\n";
}

TnnModel parse_model(std::string_view json_text) {
  using codec::json;
  const json root = codec::parse_json(json_text, "model");
  codec::check_envelope(root, "tnn");
  TnnModel model = make_tnn(codec::decode_topology(codec::get<json>(root, "topology", "model")),
                            codec::decode_features(codec::get<json>(root, "extractors", "model")),
                            codec::decode_hyperparams(codec::get<json>(root, "hyperparams", "model"),
                                                      Hyperparams{}),
                            codec::get<std::uint64_t>(root, "seed", "model"));

  const auto layers = codec::get<json>(root, "layers", "model");
  if (!layers.is_array() || layers.size() != 3) {
    throw Error(ErrorCode::kValidation, "model: expected three layers");
  }
  LayerNetwork* nets[3] = {&model.to_substructures, &model.to_structures, &model.to_documents};
  for (std::size_t l = 0; l < 3; ++l) {
    LayerNetwork& net = *nets[l];
    const std::string where = "model layer " + std::to_string(l);
    if (codec::get<std::vector<std::string>>(layers[l], "inputs", where) != net.input_names ||
        codec::get<std::vector<std::string>>(layers[l], "outputs", where) != net.output_names) {
      throw Error(ErrorCode::kValidation, where + ": neuron names disagree with the topology");
    }
    net.weights = codec::decode_matrix(codec::get<json>(layers[l], "weights", where),
                                       net.input_size(), net.output_size(), where);
    for (std::size_t j = 0; j < net.input_size(); ++j) {
      for (std::size_t k = 0; k < net.output_size(); ++k) {
        if (!net.linked(j, k) && net.weights(j, k) != 0.0) {
          throw Error(ErrorCode::kValidation, where + ": weight on a non-linked pair " +
                                                  net.input_names[j] + " -> " +
                                                  net.output_names[k]);
        }
      }
    }
    net.thresholds = codec::get<std::vector<double>>(layers[l], "thresholds", where);
    if (net.thresholds.size() != net.output_size()) {
      throw Error(ErrorCode::kValidation, where + ": threshold count disagrees with the topology");
    }
  }

  if (auto it = root.find("training"); it != root.end()) {
    model.training.substructures = codec::decode_stats(codec::get<json>(*it, "substructures", "training"));
    model.training.structures = codec::decode_stats(codec::get<json>(*it, "structures", "training"));
    model.training.documents = codec::decode_stats(codec::get<json>(*it, "documents", "training"));
    model.training.class_counts =
        codec::get<std::vector<std::size_t>>(*it, "class_counts", "training");
  }
  return model;
}

void save_model(const TnnModel& model, const std::filesystem::path& path) {
  detail::write_file(path, serialize_model(model), "model");
}

TnnModel load_model(const std::filesystem::path& path) {
  return parse_model(detail::read_file(path, "model"));
}

}  // namespace tnn
