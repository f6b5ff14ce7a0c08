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

// tnn: command-line front end over the C interface.
//
//   tnn gen-corpus --seed 7 --out data
//   tnn train tnn --corpus data/train.json --out tnn.model
//   tnn train mlp --corpus data/train.json --out mlp.model
//   tnn eval --tnn-model tnn.model --mlp-model mlp.model --test data/test.json
//   tnn inspect --model tnn.model --corpus data/test.json --doc test-0003

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tnn/tnn.h"

namespace {

struct Failure {
  tnn_status status;
  std::string message;
};

void check(tnn_status status) {
  if (status != TNN_OK) throw Failure{status, tnn_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<tnn_config, Deleter<tnn_config, tnn_config_free>>;
using CorpusPtr = std::unique_ptr<tnn_corpus, Deleter<tnn_corpus, tnn_corpus_free>>;
using ModelPtr = std::unique_ptr<tnn_model, Deleter<tnn_model, tnn_model_free>>;
using MlpPtr = std::unique_ptr<tnn_mlp, Deleter<tnn_mlp, tnn_mlp_free>>;
using ReportPtr = std::unique_ptr<tnn_report, Deleter<tnn_report, tnn_report_free>>;

std::string take_string(char* text) {
  std::string out(text);
  tnn_string_free(text);
  return out;
}

ConfigPtr load_config(const std::string& path) {
  tnn_config* config = nullptr;
  check(path.empty() ? tnn_config_default(&config) : tnn_config_load(path.c_str(), &config));
  return ConfigPtr(config);
}

CorpusPtr load_corpus(const std::string& path, const tnn_config* config) {
  tnn_corpus* corpus = nullptr;
  check(tnn_corpus_load(path.c_str(), config, &corpus));
  return CorpusPtr(corpus);
}

ModelPtr load_model(const std::string& path) {
  tnn_model* model = nullptr;
  check(tnn_model_load(path.c_str(), &model));
  return ModelPtr(model);
}

// "40,36,26" -> {40, 36, 26}.
std::vector<std::size_t> parse_counts(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> counts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw CLI::ValidationError(flag, "expected three comma-separated integers");
    }
    if (value < 0) throw CLI::ValidationError(flag, "counts must not be negative");
    counts.push_back(static_cast<std::size_t>(value));
  }
  if (counts.size() != 3) {
    throw CLI::ValidationError(flag, "expected invoice,form,letter counts");
  }
  return counts;
}

struct Thresholds {
  std::optional<std::size_t> max_passes;
  std::optional<double> tau_accept;
  std::optional<double> tau_margin;
  std::optional<double> tau_struct;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-passes", max_passes, "Recognition passes (1 disables refinement)");
    cmd->add_option("--tau-accept", tau_accept, "Minimum winning activation");
    cmd->add_option("--tau-margin", tau_margin, "Minimum gap to the runner-up");
    cmd->add_option("--tau-struct", tau_struct, "Structure reporting threshold");
  }

  // Config values first, flags win.
  tnn_recognize_params resolve(const tnn_config* config) const {
    tnn_recognize_params p{};
    check(tnn_config_get_recognize(config, &p));
    if (max_passes) p.max_passes = *max_passes;
    if (tau_accept) p.tau_accept = *tau_accept;
    if (tau_margin) p.tau_margin = *tau_margin;
    if (tau_struct) p.tau_struct = *tau_struct;
    return p;
  }
};

void print_stats(const char* what, const tnn_training_stats& s) {
  std::printf("%s: samples=%zu epochs=%zu update_passes=%llu weight_updates=%llu "
              "final_mse=%.6f converged=%s\n",
              what, s.samples, s.epochs, static_cast<unsigned long long>(s.update_passes),
              static_cast<unsigned long long>(s.weight_updates), s.final_mse,
              s.converged ? "yes" : "no");
}

void print_trace(const nlohmann::ordered_json& result) {
  std::printf("status: %s\n", result["status"].get<std::string>().c_str());
  std::printf("top class: %s  confidence %.4f  margin %.4f\n",
              result["top_class"].get<std::string>().c_str(),
              result["confidence"].get<double>(), result["margin"].get<double>());
  for (const auto& pass : result["passes"]) {
    std::printf("\npass %d\n", pass["pass"].get<int>());
    for (const char* layer : {"elements", "substructures", "structures", "documents"}) {
      std::printf("  %s\n", layer);
      for (const auto& [name, value] : pass[layer].items()) {
        if (std::string(layer) == "elements") {
          std::printf("    %-22s %.4f  (level %d)\n", name.c_str(), value.get<double>(),
                      pass["levels"][name].get<int>());
        } else {
          std::printf("    %-22s %.4f\n", name.c_str(), value.get<double>());
        }
      }
    }
    if (!pass["blamed"].empty()) {
      std::printf("  refine:");
      for (const auto& b : pass["blamed"]) std::printf(" %s", b.get<std::string>().c_str());
      std::printf("\n");
    }
  }
  std::printf("\nstructures\n");
  for (const auto& s : result["structures"]) {
    std::string flag = s["linked_to_winner"].is_null()
                           ? ""
                           : (s["linked_to_winner"].get<bool>() ? "  linked" : "  unlinked");
    std::printf("  %-14s %.4f%s\n", s["name"].get<std::string>().c_str(),
                s["activation"].get<double>(), flag.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transparent neural network document recognizer"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Write a labeled synthetic train/test pair");
  std::uint64_t gen_seed = 1;
  std::string train_counts = "40,36,26";
  std::string test_counts = "120,90,40";
  std::string gen_out;
  double jitter = 0.0;
  double drop = 0.0;
  double distort = 0.0;
  std::vector<std::string> overrides;
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--train", train_counts, "Training invoices,forms,letters");
  gen->add_option("--test", test_counts, "Test invoices,forms,letters");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--jitter", jitter, "Std-dev of token position noise");
  gen->add_option("--drop", drop, "Chance an optional structure is left out");
  gen->add_option("--distort", distort, "Chance a keyword is misspelled");
  gen->add_option("--drop-override", overrides, "structure=rate, repeatable");

  // train
  auto* train = app.add_subcommand("train", "Train a model");
  std::string train_kind;
  std::string train_corpus;
  std::string train_config;
  std::string train_out;
  std::optional<std::uint64_t> train_seed;
  train->add_option("kind", train_kind, "tnn or mlp")
      ->required()
      ->check(CLI::IsMember({"tnn", "mlp"}));
  train->add_option("--corpus", train_corpus, "Training corpus")->required();
  train->add_option("--config", train_config, "Topology/config file");
  train->add_option("--out", train_out, "Model output path")->required();
  train->add_option("--seed", train_seed, "Weight initialization seed");

  // recognize
  auto* rec = app.add_subcommand("recognize", "Recognize documents with a trained model");
  std::string rec_model;
  std::string rec_corpus;
  std::string rec_config;
  std::string rec_doc;
  Thresholds rec_thresholds;
  rec->add_option("--model", rec_model, "Trained TNN model")->required();
  rec->add_option("--corpus", rec_corpus, "Corpus file")->required();
  rec->add_option("--config", rec_config, "Topology/config file");
  rec->add_option("--doc", rec_doc, "Only this document id");
  rec_thresholds.add_to(rec);

  // eval
  auto* ev = app.add_subcommand("eval", "Print recognition tables and training cost");
  std::string ev_tnn;
  std::string ev_mlp;
  std::string ev_test;
  std::string ev_train;
  std::string ev_config;
  std::string ev_out;
  bool ev_leakage = false;
  bool ev_json = false;
  Thresholds ev_thresholds;
  ev->add_option("--tnn-model", ev_tnn, "Trained TNN model");
  ev->add_option("--mlp-model", ev_mlp, "Trained MLP model");
  ev->add_option("--test", ev_test, "Test corpus")->required();
  ev->add_option("--train", ev_train, "Training corpus (needed by --paper-leakage)");
  ev->add_option("--config", ev_config, "Topology/config file");
  ev->add_option("--out", ev_out, "Write the JSON report here");
  ev->add_flag("--paper-leakage", ev_leakage,
               "Retrain the MLP on training plus test documents, up to 128 per class");
  ev->add_flag("--json", ev_json, "Print the JSON report instead of tables");
  ev_thresholds.add_to(ev);

  // inspect
  auto* ins = app.add_subcommand("inspect", "Show the pass-by-pass trace of one document");
  std::string ins_model;
  std::string ins_corpus;
  std::string ins_config;
  std::string ins_doc;
  bool ins_json = false;
  Thresholds ins_thresholds;
  ins->add_option("--model", ins_model, "Trained TNN model")->required();
  ins->add_option("--corpus", ins_corpus, "Corpus file")->required();
  ins->add_option("--config", ins_config, "Topology/config file");
  ins->add_option("--doc", ins_doc, "Document id")->required();
  ins->add_flag("--json", ins_json, "Print JSON");
  ins_thresholds.add_to(ins);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error[usage]: %s\n", e.what());
    return 2;
  }

  try {
    if (*gen) {
      std::vector<std::size_t> train_n;
      std::vector<std::size_t> test_n;
      std::vector<std::string> names;
      std::vector<double> rates;
      try {
        train_n = parse_counts(train_counts, "--train");
        test_n = parse_counts(test_counts, "--test");
        for (const auto& o : overrides) {
          const auto eq = o.find('=');
          if (eq == std::string::npos || eq == 0) {
            throw CLI::ValidationError("--drop-override", "expected structure=rate");
          }
          names.push_back(o.substr(0, eq));
          rates.push_back(std::stod(o.substr(eq + 1)));
        }
      } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error[usage]: %s\n", e.what());
        return 2;
      } catch (const std::exception&) {
        std::fprintf(stderr, "error[usage]: --drop-override: rate is not a number\n");
        return 2;
      }
      std::error_code ec;
      std::filesystem::create_directories(gen_out, ec);
      if (ec) throw Failure{TNN_ERR_IO, "cannot create directory '" + gen_out + "'"};
      std::vector<const char*> name_ptrs;
      for (const auto& n : names) name_ptrs.push_back(n.c_str());
      for (int part = 0; part < 2; ++part) {
        const auto& n = part == 0 ? train_n : test_n;
        tnn_gen_spec spec{gen_seed + static_cast<std::uint64_t>(part),
                          n[0], n[1], n[2], jitter, drop, distort,
                          name_ptrs.data(), rates.data(), names.size(),
                          part == 0 ? "train" : "test"};
        tnn_corpus* raw = nullptr;
        check(tnn_corpus_generate(&spec, &raw));
        CorpusPtr corpus(raw);
        const auto path = (std::filesystem::path(gen_out) / (part == 0 ? "train.json" : "test.json"))
                              .string();
        check(tnn_corpus_save(corpus.get(), path.c_str()));
        std::printf("wrote %zu documents to %s\n", tnn_corpus_size(corpus.get()), path.c_str());
      }
    } else if (*train) {
      auto config = load_config(train_config);
      if (train_seed) check(tnn_config_set_seed(config.get(), *train_seed));
      auto corpus = load_corpus(train_corpus, config.get());
      tnn_training_stats stats{};
      if (train_kind == "tnn") {
        tnn_model* raw = nullptr;
        check(tnn_model_train(config.get(), corpus.get(), &raw, &stats));
        ModelPtr model(raw);
        check(tnn_model_save(model.get(), train_out.c_str()));
        print_stats("tnn", stats);
      } else {
        tnn_mlp* raw = nullptr;
        check(tnn_mlp_train(config.get(), corpus.get(), &raw, &stats));
        MlpPtr mlp(raw);
        check(tnn_mlp_save(mlp.get(), train_out.c_str()));
        print_stats("mlp", stats);
      }
      std::printf("model written to %s\n", train_out.c_str());
    } else if (*rec || *ins) {
      const bool inspecting = static_cast<bool>(*ins);
      auto config = load_config(inspecting ? ins_config : rec_config);
      auto model = load_model(inspecting ? ins_model : rec_model);
      auto corpus = load_corpus(inspecting ? ins_corpus : rec_corpus, config.get());
      const auto params = (inspecting ? ins_thresholds : rec_thresholds).resolve(config.get());
      const std::string& only = inspecting ? ins_doc : rec_doc;
      std::vector<std::size_t> indices;
      if (!only.empty()) {
        std::size_t index = 0;
        check(tnn_corpus_find(corpus.get(), only.c_str(), &index));
        indices.push_back(index);
      } else {
        for (std::size_t i = 0; i < tnn_corpus_size(corpus.get()); ++i) indices.push_back(i);
      }
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (std::size_t index : indices) {
        char* raw = nullptr;
        check(tnn_recognize_json(model.get(), corpus.get(), index, &params, &raw));
        auto result = nlohmann::ordered_json::parse(take_string(raw));
        if (inspecting) {
          if (ins_json) {
            std::printf("%s\n", result.dump(2).c_str());
          } else {
            print_trace(result);
          }
        } else if (only.empty()) {
          result = nlohmann::ordered_json{{"id", tnn_corpus_id(corpus.get(), index)}, {"result", result}};
          all.push_back(std::move(result));
        } else {
          std::printf("%s\n", result.dump(2).c_str());
        }
      }
      if (!inspecting && only.empty()) std::printf("%s\n", all.dump(2).c_str());
    } else if (*ev) {
      if (ev_tnn.empty() && ev_mlp.empty() && !ev_leakage) {
        std::fprintf(stderr, "error[usage]: eval needs --tnn-model and/or --mlp-model\n");
        return 2;
      }
      if (ev_leakage && ev_train.empty()) {
        std::fprintf(stderr, "error[usage]: --paper-leakage needs --train\n");
        return 2;
      }
      auto config = load_config(ev_config);
      auto test = load_corpus(ev_test, config.get());
      ModelPtr model;
      MlpPtr mlp;
      if (!ev_tnn.empty()) model = load_model(ev_tnn);
      if (ev_leakage) {
        auto train_corpus = load_corpus(ev_train, config.get());
        tnn_corpus* joined = nullptr;
        check(tnn_corpus_concat(train_corpus.get(), test.get(), &joined));
        CorpusPtr joined_ptr(joined);
        tnn_corpus* capped = nullptr;
        check(tnn_corpus_take_per_class(joined, 128, &capped));
        CorpusPtr capped_ptr(capped);
        tnn_mlp* raw = nullptr;
        tnn_training_stats stats{};
        check(tnn_mlp_train(config.get(), capped, &raw, &stats));
        mlp.reset(raw);
      } else if (!ev_mlp.empty()) {
        tnn_mlp* raw = nullptr;
        check(tnn_mlp_load(ev_mlp.c_str(), &raw));
        mlp.reset(raw);
      }
      const auto params = ev_thresholds.resolve(config.get());
      tnn_report* raw = nullptr;
      check(tnn_evaluate(model.get(), mlp.get(), test.get(), &params, &raw));
      ReportPtr report(raw);
      if (!ev_out.empty()) check(tnn_report_save(report.get(), ev_out.c_str()));
      char* text = nullptr;
      if (ev_json) {
        check(tnn_report_json(report.get(), &text));
      } else {
        check(tnn_report_text(report.get(), &text));
      }
      std::printf("%s\n", take_string(text).c_str());
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error[%s]: %s\n", tnn_status_name(f.status), f.message.c_str());
    return 1;
  }
  return 0;
}
