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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace tnn::testing {

Token tok(std::string text, double x, double y, double width, double height) {
  if (width <= 0.0) width = kCharWidth * static_cast<double>(text.size());
  return make_token(std::move(text), x, y, width, height);
}

DocumentInstance doc_of(std::vector<Token> tokens, std::string id) {
  DocumentInstance doc;
  doc.id = std::move(id);
  doc.tokens = std::move(tokens);
  return doc;
}

GenSpec desk_spec(std::uint64_t seed, std::size_t invoices, std::size_t forms,
                  std::size_t letters, std::string prefix) {
  GenSpec spec;
  spec.seed = seed;
  spec.invoices = invoices;
  spec.forms = forms;
  spec.letters = letters;
  spec.noise.jitter = 0.005;
  spec.noise.drop_rate = 0.05;
  spec.noise.distort_rate = 0.05;
  spec.id_prefix = std::move(prefix);
  return spec;
}

const Corpus& desk_train() {
  static const Corpus corpus = generate(desk_spec(1, 40, 36, 26, "train"));
  return corpus;
}

const Corpus& desk_test() {
  static const Corpus corpus = generate(desk_spec(2, 120, 90, 40, "test"));
  return corpus;
}

const TnnModel& desk_model() {
  static const TnnModel model = [] {
    TnnModel m = make_tnn(Topology::default_topology(), FeatureExtractor::default_extractors(),
                          Hyperparams{}, 1);
    train_tnn(m, desk_train());
    return m;
  }();
  return model;
}

DocumentInstance expense_claim(std::size_t index) {
  std::mt19937_64 rng(7919 * index + 184);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto money = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::vector<Token> t;
  t.push_back(tok("Acme", 0.06, 0.04));
  t.push_back(tok("Services", 0.11, 0.04));
  t.push_back(tok("ORDER", 0.40, 0.08));
  t.push_back(tok("FORM", 0.46, 0.08));
  t.push_back(tok("12/03/2020", 0.75, 0.12));
  t.push_back(tok("Name:", 0.06, 0.16));
  t.push_back(tok("Petit", 0.22, 0.16));
  t.push_back(tok("Street:", 0.06, 0.19));
  t.push_back(tok("Oak", 0.22, 0.19));
  t.push_back(tok("BP", 0.06, 0.22));
  t.push_back(tok("4512", 0.22, 0.22));

  const std::size_t rows = 4 + index % 4;
  double y = 0.30;
  for (std::size_t r = 0; r < rows; ++r) {
    t.push_back(tok(r % 2 ? "Income:" : "Amount:", 0.06, y));
    t.push_back(tok(money(1.0 + 900.0 * uniform()), 0.40, y));
    t.push_back(tok(uniform() < 0.5 ? "Single" : "Married", 0.55, y));
    t.push_back(tok(money(1.0 + 900.0 * uniform()), 0.72, y));
    y += 0.035;
  }
  t.push_back(tok("Total:", 0.62, y + 0.03));
  t.push_back(tok("845.10", 0.85, y + 0.03));
  t.push_back(tok("Signature:", 0.62, 0.88));
  t.push_back(tok("Roux", 0.76, 0.88));

  DocumentInstance doc = doc_of(std::move(t), "claim-" + std::to_string(index));
  doc.labels = GroundTruth{"form",
                           {"address", "header", "signature", "table", "total"},
                           {"address_block", "date_line", "signature_block", "tabular_grid",
                            "totals_line"}};
  return doc;
}

Corpus expense_claims(std::size_t count) {
  Corpus corpus;
  for (std::size_t i = 0; i < count; ++i) corpus.push_back(expense_claim(i));
  return corpus;
}

MlpModel random_mlp(std::array<std::size_t, 4> sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  MlpModel m;
  m.sizes = sizes;
  for (std::size_t l = 0; l < 3; ++l) {
    m.weights[l] = Matrix(sizes[l], sizes[l + 1]);
    for (double& w : m.weights[l].data()) w = u(rng);
    m.biases[l].resize(sizes[l + 1]);
    for (double& b : m.biases[l]) b = u(rng);
  }
  return m;
}

long double mlp_loss_oracle(const MlpModel& model, std::span<const double> input,
                            std::span<const double> target) {
  std::vector<long double> a(input.begin(), input.end());
  for (std::size_t l = 0; l < 3; ++l) {
    const Matrix& w = model.weights[l];
    std::vector<long double> next(w.cols());
    for (std::size_t o = 0; o < w.cols(); ++o) {
      long double net = model.biases[l][o];
      for (std::size_t i = 0; i < w.rows(); ++i) net += static_cast<long double>(w(i, o)) * a[i];
      next[o] = 1.0L / (1.0L + std::exp(-net));
    }
    a = std::move(next);
  }
  long double loss = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long double e = target[k] - a[k];
    loss += 0.5L * e * e;
  }
  return loss;
}

double max_gradient_error(const MlpModel& model, std::span<const double> input,
                          std::span<const double> target, double h) {
  const MlpGradient g = mlp_gradient(model, input, target);
  MlpModel probe = model;
  double worst = 0.0;
  auto compare = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + h;
    const long double up = mlp_loss_oracle(probe, input, target);
    param = saved - h;
    const long double down = mlp_loss_oracle(probe, input, target);
    param = saved;
    // The step actually taken after rounding the perturbed parameters.
    const long double step = static_cast<long double>(saved + h) - (saved - h);
    const double numeric = static_cast<double>((up - down) / step);
    worst = std::max(worst, std::abs(analytic - numeric) / (std::abs(numeric) + 1e-8));
  };
  for (std::size_t l = 0; l < 3; ++l) {
    auto w = probe.weights[l].data();
    const auto gw = g.weights[l].data();
    for (std::size_t i = 0; i < w.size(); ++i) compare(w[i], gw[i]);
    for (std::size_t o = 0; o < probe.biases[l].size(); ++o) compare(probe.biases[l][o], g.biases[l][o]);
  }
  return worst;
}

std::filesystem::path scratch_dir(std::string_view name) {
  const auto dir = std::filesystem::temp_directory_path() / "tnn-tests" / std::string(name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace tnn::testing
