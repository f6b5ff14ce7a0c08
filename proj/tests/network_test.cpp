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

#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "tnn/corpus_gen.hpp"
#include "tnn/error.hpp"
#include "tnn/network.hpp"

using tnn::ErrorCode;
using tnn::Hyperparams;
using tnn::LayerNetwork;
using tnn::TrainingSample;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const tnn::Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

LayerNetwork dense_layer(std::size_t in, std::size_t out) {
  LayerNetwork net;
  for (std::size_t j = 0; j < in; ++j) net.input_names.push_back("i" + std::to_string(j));
  for (std::size_t k = 0; k < out; ++k) net.output_names.push_back("o" + std::to_string(k));
  net.weights = tnn::Matrix(in, out);
  net.mask.assign(in * out, 1);
  net.thresholds.assign(out, 0.0);
  return net;
}

// Plain re-statement of the online delta rule for one output neuron with
// all inputs linked, used to check train_nn1 step by step.
struct DeltaOracle {
  std::vector<double> w;
  double theta = 0.0;

  double out(const std::vector<double>& x) const {
    double net = -theta;
    for (std::size_t j = 0; j < x.size(); ++j) net += w[j] * x[j];
    return 1.0 / (1.0 + std::exp(-net));
  }

  double epoch(const std::vector<TrainingSample>& samples, double mu) {
    double sse = 0.0;
    for (const auto& s : samples) {
      const double y = out(s.input);
      const double e = s.target[0] - y;
      sse += e * e;
      const double d = y * (1.0 - y) * e;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] += mu * s.input[j] * d;
      theta += mu * -1.0 * d;
    }
    return sse / static_cast<double>(samples.size());
  }
};

const tnn::Corpus& small_corpus() {
  static const tnn::Corpus corpus = tnn::generate(tnn::testing::desk_spec(3, 6, 6, 6, "small"));
  return corpus;
}

tnn::TnnModel fresh_model(std::uint64_t seed = 1) {
  return tnn::make_tnn(tnn::Topology::default_topology(),
                       tnn::FeatureExtractor::default_extractors(), Hyperparams{}, seed);
}

tnn::TnnModel random_model(std::mt19937_64& rng) {
  auto model = fresh_model();
  tnn::randomize_layer(model.to_substructures, rng());
  tnn::randomize_layer(model.to_structures, rng());
  tnn::randomize_layer(model.to_documents, rng());
  return model;
}

}  // namespace

TEST_CASE("sigmoid") {
  CHECK(tnn::sigmoid(0.0) == 0.5);
  CHECK(tnn::sigmoid(2.0) == doctest::Approx(0.8807970779778823).epsilon(1e-15));
  CHECK(tnn::sigmoid(2.0) == 1.0 / (1.0 + std::exp(-2.0)));
  for (double x : {-30.0, -3.3, -0.1, 0.7, 5.0, 12.0}) {
    CHECK(tnn::sigmoid(x) == doctest::Approx(1.0 - tnn::sigmoid(-x)).epsilon(1e-12));
  }
  CHECK(code_of([] { tnn::sigmoid(std::nan("")); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { tnn::sigmoid(INFINITY); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("sigmoid derivative from output") {
  CHECK(tnn::sigmoid_prime_from_output(0.5) == 0.25);
  CHECK(tnn::sigmoid_prime_from_output(0.2) == doctest::Approx(0.16));
  CHECK(code_of([] { tnn::sigmoid_prime_from_output(0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { tnn::sigmoid_prime_from_output(1.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("neuron activation") {
  const std::vector<double> ones = {1.0, 1.0};
  CHECK(tnn::neuron_activation(ones, std::vector<double>{1.0, -1.0}, 0.0) == 0.5);
  CHECK(tnn::neuron_activation(std::vector<double>{0.3, 0.9}, std::vector<double>{0.0, 0.0}, 0.0) ==
        0.5);
  CHECK(tnn::neuron_activation(ones, std::vector<double>{0.5, 0.5}, 1.0) == 0.5);
  CHECK_THROWS_AS(tnn::neuron_activation(ones, std::vector<double>{1.0}, 0.0), tnn::Error);
}

TEST_CASE("forward layer") {
  auto zero = dense_layer(3, 2);
  for (double y : tnn::forward_layer(zero, std::vector<double>{0.0, 0.0, 0.0})) CHECK(y == 0.5);

  auto single = dense_layer(1, 1);
  single.weights(0, 0) = 10.0;
  single.thresholds[0] = 5.0;
  const auto y = tnn::forward_layer(single, std::vector<double>{1.0});
  CHECK(y[0] == tnn::sigmoid(5.0));
  CHECK(y[0] == doctest::Approx(0.9933).epsilon(1e-4));
  CHECK_THROWS_AS(tnn::forward_layer(single, std::vector<double>{1.0, 2.0}), tnn::Error);
}

TEST_CASE("one delta-rule step by hand") {
  // S_k = sigmoid(0.1 * 1 - 0.1) = 0.5, E = 1, delta = 0.25 * (1 - 0.5) = 0.125,
  // W += mu * S_j * delta = 0.5 * 1 * 0.125, so W becomes 0.1625.
  auto net = dense_layer(1, 1);
  net.weights(0, 0) = 0.1;
  net.thresholds[0] = 0.1;
  const std::vector<TrainingSample> samples = {{{1.0}, {1.0}}};
  const auto stats = tnn::train_nn1(net, samples, Hyperparams{0.5, 0.0, 1});
  CHECK(stats.epochs == 1);
  CHECK(stats.update_passes == 1);
  const double s = 0.5;
  const double delta = s * (1.0 - s) * (1.0 - s);
  CHECK(net.weights(0, 0) == 0.1 + 0.5 * 1.0 * delta);
  CHECK(net.weights(0, 0) == doctest::Approx(0.1625).epsilon(1e-15));
  CHECK(net.thresholds[0] == 0.1 - 0.5 * delta);
}

TEST_CASE("zero error leaves every weight and threshold unchanged") {
  std::mt19937_64 rng(5);
  auto net = dense_layer(4, 3);
  tnn::randomize_layer(net, 42);
  std::vector<TrainingSample> samples;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> x = {u(rng), u(rng), u(rng), u(rng)};
    // A single sample per call so the target is the exact current output.
    const auto before = net;
    const std::vector<TrainingSample> one = {{x, tnn::forward_layer(net, x)}};
    tnn::train_nn1(net, one, Hyperparams{0.5, 0.0, 1});
    CHECK(net == before);
  }
}

TEST_CASE("delta rule matches an independent oracle on an AND task") {
  const std::vector<TrainingSample> samples = {
      {{0, 0}, {0}}, {{0, 1}, {0}}, {{1, 0}, {0}}, {{1, 1}, {1}}};
  auto net = dense_layer(2, 1);
  tnn::randomize_layer(net, 7);
  DeltaOracle oracle{{net.weights(0, 0), net.weights(1, 0)}, net.thresholds[0]};

  for (int epoch = 0; epoch < 25; ++epoch) {
    const double oracle_mse = oracle.epoch(samples, 0.5);
    const auto stats = tnn::train_nn1(net, samples, Hyperparams{0.5, 0.0, 1});
    CHECK(stats.final_mse == doctest::Approx(oracle_mse).epsilon(1e-12));
    CHECK(net.weights(0, 0) == doctest::Approx(oracle.w[0]).epsilon(1e-12));
    CHECK(net.weights(1, 0) == doctest::Approx(oracle.w[1]).epsilon(1e-12));
    CHECK(net.thresholds[0] == doctest::Approx(oracle.theta).epsilon(1e-12));
  }

  auto fresh = dense_layer(2, 1);
  tnn::randomize_layer(fresh, 7);
  const auto stats = tnn::train_nn1(fresh, samples, Hyperparams{0.5, 0.05, 1000});
  CHECK(stats.converged);
  CHECK(stats.final_mse < 0.05);
  CHECK(stats.epochs <= 1000);
}

TEST_CASE("training counters") {
  auto net = dense_layer(3, 2);
  net.mask = {1, 0, 1, 1, 0, 1};
  tnn::randomize_layer(net, 3);
  const std::vector<TrainingSample> samples = {
      {{1, 0, 1}, {1, 0}}, {{0, 1, 0}, {0, 1}}, {{1, 1, 0}, {1, 1}}};
  const auto stats = tnn::train_nn1(net, samples, Hyperparams{0.5, 0.0, 17});
  CHECK(stats.epochs == 17);
  CHECK_FALSE(stats.converged);
  CHECK(stats.samples == 3);
  CHECK(stats.update_passes == 3u * 17u);
  CHECK(net.link_count() == 4);
  CHECK(stats.weight_updates == 3u * 4u * 17u);
  CHECK(net.weights(0, 1) == 0.0);
  CHECK(net.weights(2, 0) == 0.0);
}

TEST_CASE("train_nn1 argument checks") {
  auto net = dense_layer(2, 1);
  CHECK(code_of([&] { tnn::train_nn1(net, {}, Hyperparams{}); }) == ErrorCode::kInvalidArgument);
  const std::vector<TrainingSample> wrong = {{{1.0}, {1.0}}};
  CHECK(code_of([&] { tnn::train_nn1(net, wrong, Hyperparams{}); }) ==
        ErrorCode::kInvalidArgument);
  const std::vector<TrainingSample> far = {{{1.0, 0.0}, {2.0}}};
  CHECK(code_of([&] { tnn::train_nn1(net, far, Hyperparams{}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("random layers respect the link mask") {
  const auto topo = tnn::Topology::default_topology();
  auto net = tnn::make_layer(topo, tnn::Layer::kElements);
  tnn::randomize_layer(net, 9);
  for (std::size_t j = 0; j < net.input_size(); ++j) {
    for (std::size_t k = 0; k < net.output_size(); ++k) {
      if (!net.linked(j, k)) {
        CHECK(net.weights(j, k) == 0.0);
      } else {
        CHECK(net.weights(j, k) >= -0.5);
        CHECK(net.weights(j, k) < 0.5);
      }
    }
  }
}

TEST_CASE("zero-weight cascade outputs one half everywhere") {
  const auto model = fresh_model();
  const auto trace = tnn::forward_tnn(model, std::vector<double>(10, 0.7));
  for (const auto* layer : {&trace.substructures, &trace.structures, &trace.documents}) {
    for (double a : *layer) CHECK(a == 0.5);
  }
}

TEST_CASE("cascade equals three layer calls") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = random_model(rng);
    std::vector<double> x(10);
    for (double& v : x) v = u(rng);
    const auto trace = tnn::forward_tnn(model, x);
    const auto a = tnn::forward_layer(model.to_substructures, x);
    const auto b = tnn::forward_layer(model.to_structures, a);
    const auto c = tnn::forward_layer(model.to_documents, b);
    CHECK(trace.elements == x);
    CHECK(trace.substructures == a);
    CHECK(trace.structures == b);
    CHECK(trace.documents == c);
  }
}

TEST_CASE("activations stay strictly inside the unit interval") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto model = random_model(rng);
    std::vector<double> x(10);
    for (double& v : x) v = u(rng);
    const auto t = tnn::forward_tnn(model, x);
    for (const auto* layer : {&t.substructures, &t.structures, &t.documents}) {
      for (double a : *layer) {
        CHECK(a > 0.0);
        CHECK(a < 1.0);
      }
    }
  }
}

TEST_CASE("non-linked inputs never move an output") {
  auto model = fresh_model();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto check_layer = [&](const LayerNetwork& net) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(net.input_size());
      for (double& v : x) v = u(rng);
      const auto base = tnn::forward_layer(net, x);
      for (std::size_t j = 0; j < net.input_size(); ++j) {
        auto moved = x;
        moved[j] = 1.0 - moved[j] + 3.0;
        const auto out = tnn::forward_layer(net, moved);
        for (std::size_t k = 0; k < net.output_size(); ++k) {
          if (!net.linked(j, k)) CHECK(out[k] == base[k]);
        }
      }
    }
  };
  for (int stage = 0; stage < 2; ++stage) {
    check_layer(model.to_substructures);
    check_layer(model.to_structures);
    check_layer(model.to_documents);
    tnn::train_tnn(model, small_corpus());
  }
}

TEST_CASE("training on one document per class") {
  auto model = fresh_model();
  tnn::Corpus corpus;
  for (const auto& doc : small_corpus()) {
    bool seen = false;
    for (const auto& d : corpus) seen = seen || d.labels->document_class == doc.labels->document_class;
    if (!seen) corpus.push_back(doc);
  }
  REQUIRE(corpus.size() == 3);
  const auto untrained = model;
  const auto summary = tnn::train_tnn(model, corpus);
  CHECK(summary.class_counts == std::vector<std::size_t>{1, 1, 1});
  CHECK(model.to_substructures.weights != untrained.to_substructures.weights);
  CHECK(model.to_documents.weights != untrained.to_documents.weights);
  CHECK(model.training == summary);
}

TEST_CASE("training is bit-reproducible") {
  auto a = fresh_model(4);
  auto b = fresh_model(4);
  tnn::train_tnn(a, small_corpus());
  tnn::train_tnn(b, small_corpus());
  CHECK(a == b);
  CHECK(tnn::serialize_model(a) == tnn::serialize_model(b));
  auto c = fresh_model(5);
  tnn::train_tnn(c, small_corpus());
  CHECK(tnn::serialize_model(a) != tnn::serialize_model(c));
}

TEST_CASE("training input errors") {
  auto model = fresh_model();
  CHECK(code_of([&] { tnn::train_tnn(model, {}); }) == ErrorCode::kValidation);
  tnn::Corpus corpus = small_corpus();
  corpus[2].labels.reset();
  try {
    tnn::train_tnn(model, corpus);
    FAIL("expected an Error");
  } catch (const tnn::Error& e) {
    CHECK(e.code() == ErrorCode::kValidation);
    CHECK(std::string(e.what()).find(corpus[2].id) != std::string::npos);
  }
}

TEST_CASE("extractor set must cover the element layer") {
  auto extractors = tnn::FeatureExtractor::default_extractors().extractors();
  extractors.pop_back();
  CHECK(code_of([&] {
          tnn::make_tnn(tnn::Topology::default_topology(), tnn::FeatureExtractor(extractors));
        }) == ErrorCode::kTopologyMismatch);
}

TEST_CASE("desk corpus trains every layer below epsilon") {
  const auto& model = tnn::testing::desk_model();
  CHECK(model.training.class_counts == std::vector<std::size_t>{40, 36, 26});
  for (const auto* s : {&model.training.substructures, &model.training.structures,
                        &model.training.documents}) {
    CHECK(s->converged);
    CHECK(s->final_mse < model.hyper.epsilon);
  }
}

TEST_CASE("model files") {
  auto model = fresh_model(8);
  tnn::train_tnn(model, small_corpus());
  const auto dir = tnn::testing::scratch_dir("network_model_files");
  tnn::save_model(model, dir / "m.json");
  CHECK(tnn::load_model(dir / "m.json") == model);

  auto root = nlohmann::json::parse(tnn::serialize_model(model));
  auto versioned = root;
  versioned["format_version"] = 999;
  CHECK(code_of([&] { tnn::parse_model(versioned.dump()); }) == ErrorCode::kVersionMismatch);

  auto reshaped = root;
  reshaped["layers"][0]["weights"].erase(0);
  CHECK(code_of([&] { tnn::parse_model(reshaped.dump()); }) == ErrorCode::kValidation);

  auto narrow = root;
  narrow["layers"][1]["weights"][0].erase(0);
  CHECK(code_of([&] { tnn::parse_model(narrow.dump()); }) == ErrorCode::kValidation);

  auto other_kind = root;
  other_kind["kind"] = "mlp";
  CHECK(code_of([&] { tnn::parse_model(other_kind.dump()); }) != ErrorCode::kInvalidArgument);

  CHECK(code_of([&] { tnn::parse_model("{not json"); }) == ErrorCode::kParse);
  CHECK(code_of([&] { tnn::load_model(dir / "missing.json"); }) == ErrorCode::kIo);
}
