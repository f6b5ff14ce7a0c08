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

// Fixtures shared by the unit and acceptance tests.

#ifndef TNN_TESTS_SUPPORT_HPP_
#define TNN_TESTS_SUPPORT_HPP_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/corpus_gen.hpp"
#include "tnn/document.hpp"
#include "tnn/mlp.hpp"
#include "tnn/network.hpp"

namespace tnn::testing {

inline constexpr double kCharWidth = 0.0085;

// Token whose width follows its text length unless given.
Token tok(std::string text, double x, double y, double width = 0.0, double height = 0.014);

DocumentInstance doc_of(std::vector<Token> tokens, std::string id = "fixture");

// Low-noise corpora at the benchmark sizes: train 40/36/26 from seed 1,
// test 120/90/40 from seed 2.
GenSpec desk_spec(std::uint64_t seed, std::size_t invoices, std::size_t forms,
                  std::size_t letters, std::string prefix);
const Corpus& desk_train();
const Corpus& desk_test();

// TNN trained on desk_train() with default hyperparameters and seed 1.
const TnnModel& desk_model();

// Expense-claim form: a grid of labels, two figure columns and a status
// word. At level 1 it reads halfway between an invoice and a form. Only one
// figure column lies in the amount region, so the refined amount area gates
// drop it to zero and the vote goes to form.
DocumentInstance expense_claim(std::size_t index);
Corpus expense_claims(std::size_t count);

// Dense network of the given shape with weights and biases uniform in
// [-0.5, 0.5). Its extractor set is left at the default and is not used.
MlpModel random_mlp(std::array<std::size_t, 4> sizes, std::uint64_t seed);

// Loss 0.5 * sum (t - y)^2 recomputed in long double without the library.
long double mlp_loss_oracle(const MlpModel& model, std::span<const double> input,
                            std::span<const double> target);

// Largest |analytic - numeric| / (|numeric| + 1e-8) over every weight and
// bias, with the numeric side from central differences of the oracle loss.
double max_gradient_error(const MlpModel& model, std::span<const double> input,
                          std::span<const double> target, double h = 1e-5);

// Fresh empty directory under the build tree's temp area.
std::filesystem::path scratch_dir(std::string_view name);

}  // namespace tnn::testing

#endif  // TNN_TESTS_SUPPORT_HPP_
