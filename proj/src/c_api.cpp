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

#include "tnn/tnn.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <map>
#include <memory>
#include <new>
#include <string>

#include "tnn/config.hpp"
#include "tnn/corpus_gen.hpp"
#include "tnn/error.hpp"
#include "tnn/eval.hpp"
#include "util.hpp"

struct tnn_config {
  tnn::Config value;
};
struct tnn_corpus {
  tnn::Corpus value;
};
struct tnn_model {
  tnn::TnnModel value;
};
struct tnn_mlp {
  tnn::MlpModel value;
};
struct tnn_report {
  tnn::EvalReport value;
};

namespace {

thread_local std::string last_error;

tnn_status status_of(tnn::ErrorCode code) {
  switch (code) {
    case tnn::ErrorCode::kInvalidArgument:
      return TNN_ERR_INVALID_ARGUMENT;
    case tnn::ErrorCode::kIo:
      return TNN_ERR_IO;
    case tnn::ErrorCode::kParse:
      return TNN_ERR_PARSE;
    case tnn::ErrorCode::kValidation:
      return TNN_ERR_VALIDATION;
    case tnn::ErrorCode::kVersionMismatch:
      return TNN_ERR_VERSION;
    case tnn::ErrorCode::kTopologyMismatch:
      return TNN_ERR_TOPOLOGY;
  }
  return TNN_ERR_INTERNAL;
}

template <typename Fn>
tnn_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return TNN_OK;
  } catch (const tnn::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TNN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TNN_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw tnn::Error(tnn::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

tnn::RecognizeParams to_params(const tnn_recognize_params& p) {
  return {p.tau_accept, p.tau_margin, p.tau_struct, p.max_passes, p.blame_budget};
}

tnn_recognize_params from_params(const tnn::RecognizeParams& p) {
  return {p.tau_accept, p.tau_margin, p.tau_struct, p.max_passes, p.blame_budget};
}

void fill_stats(const tnn::TrainingStats& s, tnn_training_stats* out) {
  if (out == nullptr) return;
  *out = {s.samples, s.epochs, s.update_passes, s.weight_updates, s.final_mse,
          s.converged ? 1 : 0};
}

// Sum over the three layer networks.
tnn::TrainingStats combined(const tnn::TnnTrainingSummary& t) {
  tnn::TrainingStats s;
  s.samples = t.substructures.samples;
  for (const auto* layer : {&t.substructures, &t.structures, &t.documents}) {
    s.epochs += layer->epochs;
    s.final_mse = std::max(s.final_mse, layer->final_mse);
  }
  s.update_passes = t.total_update_passes();
  s.weight_updates = t.total_weight_updates();
  s.converged = t.substructures.converged && t.structures.converged && t.documents.converged;
  return s;
}

}  // namespace

extern "C" {

const char* tnn_last_error(void) { return last_error.c_str(); }

const char* tnn_status_name(tnn_status status) {
  switch (status) {
    case TNN_OK:
      return "ok";
    case TNN_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case TNN_ERR_IO:
      return "io";
    case TNN_ERR_PARSE:
      return "parse";
    case TNN_ERR_VALIDATION:
      return "validation";
    case TNN_ERR_VERSION:
      return "version_mismatch";
    case TNN_ERR_TOPOLOGY:
      return "topology_mismatch";
    case TNN_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void tnn_string_free(char* text) { std::free(text); }

tnn_status tnn_config_default(tnn_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new tnn_config{};
  });
}

tnn_status tnn_config_load(const char* path, tnn_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tnn_config{tnn::load_config(path)};
  });
}

tnn_status tnn_config_save(const tnn_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    tnn::detail::write_file(path, tnn::serialize_config(config->value), "config");
  });
}

tnn_status tnn_config_get_recognize(const tnn_config* config, tnn_recognize_params* out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = from_params(config->value.recognize);
  });
}

tnn_status tnn_config_set_recognize(tnn_config* config, const tnn_recognize_params* params) {
  return guarded([&] {
    require(config, "config");
    require(params, "params");
    config->value.recognize = to_params(*params);
  });
}

tnn_status tnn_config_get_seed(const tnn_config* config, uint64_t* out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = config->value.seed;
  });
}

tnn_status tnn_config_set_seed(tnn_config* config, uint64_t seed) {
  return guarded([&] {
    require(config, "config");
    config->value.seed = seed;
  });
}

void tnn_config_free(tnn_config* config) { delete config; }

tnn_status tnn_corpus_load(const char* path, const tnn_config* config, tnn_corpus** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const tnn::Topology topology =
        config ? config->value.topology : tnn::Topology::default_topology();
    *out = new tnn_corpus{tnn::load_corpus(path, topology)};
  });
}

tnn_status tnn_corpus_save(const tnn_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus, "corpus");
    require(path, "path");
    tnn::save_corpus(corpus->value, path);
  });
}

tnn_status tnn_corpus_generate(const tnn_gen_spec* spec, tnn_corpus** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    tnn::GenSpec gen;
    gen.seed = spec->seed;
    gen.invoices = spec->invoices;
    gen.forms = spec->forms;
    gen.letters = spec->letters;
    gen.noise.jitter = spec->jitter;
    gen.noise.drop_rate = spec->drop_rate;
    gen.noise.distort_rate = spec->distort_rate;
    if (spec->id_prefix != nullptr) gen.id_prefix = spec->id_prefix;
    if (spec->drop_override_count > 0) {
      require(spec->drop_override_names, "drop_override_names");
      require(spec->drop_override_rates, "drop_override_rates");
    }
    for (size_t i = 0; i < spec->drop_override_count; ++i) {
      require(spec->drop_override_names[i], "drop override name");
      gen.noise.drop_overrides[spec->drop_override_names[i]] = spec->drop_override_rates[i];
    }
    *out = new tnn_corpus{tnn::generate(gen)};
  });
}

tnn_status tnn_corpus_concat(const tnn_corpus* a, const tnn_corpus* b, tnn_corpus** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    tnn::Corpus joined = a->value;
    joined.insert(joined.end(), b->value.begin(), b->value.end());
    *out = new tnn_corpus{std::move(joined)};
  });
}

tnn_status tnn_corpus_take_per_class(const tnn_corpus* corpus, size_t count, tnn_corpus** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    std::map<std::string, size_t> taken;
    tnn::Corpus picked;
    for (const auto& doc : corpus->value) {
      if (!doc.labels) continue;
      if (taken[doc.labels->document_class]++ < count) picked.push_back(doc);
    }
    *out = new tnn_corpus{std::move(picked)};
  });
}

size_t tnn_corpus_size(const tnn_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.size();
}

const char* tnn_corpus_id(const tnn_corpus* corpus, size_t index) {
  if (corpus == nullptr || index >= corpus->value.size()) return nullptr;
  return corpus->value[index].id.c_str();
}

tnn_status tnn_corpus_find(const tnn_corpus* corpus, const char* id, size_t* index) {
  return guarded([&] {
    require(corpus, "corpus");
    require(id, "id");
    require(index, "index");
    for (size_t i = 0; i < corpus->value.size(); ++i) {
      if (corpus->value[i].id == id) {
        *index = i;
        return;
      }
    }
    throw tnn::Error(tnn::ErrorCode::kInvalidArgument,
                     std::string("no document with id '") + id + "'");
  });
}

void tnn_corpus_free(tnn_corpus* corpus) { delete corpus; }

tnn_status tnn_model_train(const tnn_config* config, const tnn_corpus* corpus, tnn_model** out,
                           tnn_training_stats* total) {
  return guarded([&] {
    require(config, "config");
    require(corpus, "corpus");
    require(out, "out");
    const auto& c = config->value;
    auto model = std::make_unique<tnn_model>(
        tnn_model{tnn::make_tnn(c.topology, c.features, c.tnn, c.seed)});
    tnn::train_tnn(model->value, corpus->value);
    fill_stats(combined(model->value.training), total);
    *out = model.release();
  });
}

tnn_status tnn_model_load(const char* path, tnn_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tnn_model{tnn::load_model(path)};
  });
}

tnn_status tnn_model_save(const tnn_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    tnn::save_model(model->value, path);
  });
}

void tnn_model_free(tnn_model* model) { delete model; }

tnn_status tnn_recognize_json(const tnn_model* model, const tnn_corpus* corpus, size_t index,
                              const tnn_recognize_params* params, char** json_out) {
  return guarded([&] {
    require(model, "model");
    require(corpus, "corpus");
    require(json_out, "json_out");
    if (index >= corpus->value.size()) {
      throw tnn::Error(tnn::ErrorCode::kInvalidArgument, "document index out of range");
    }
    const tnn::RecognizeParams p = params ? to_params(*params) : tnn::RecognizeParams{};
    const auto result = tnn::recognize(model->value, corpus->value[index], p);
    *json_out = duplicate(tnn::serialize_result(result, model->value));
  });
}

tnn_status tnn_mlp_train(const tnn_config* config, const tnn_corpus* corpus, tnn_mlp** out,
                         tnn_training_stats* stats) {
  return guarded([&] {
    require(config, "config");
    require(corpus, "corpus");
    require(out, "out");
    const auto& c = config->value;
    auto mlp = std::make_unique<tnn_mlp>(
        tnn_mlp{tnn::make_mlp(c.topology, c.features, c.mlp, c.seed)});
    fill_stats(tnn::train_mlp(mlp->value, corpus->value), stats);
    *out = mlp.release();
  });
}

tnn_status tnn_mlp_load(const char* path, tnn_mlp** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tnn_mlp{tnn::load_mlp(path)};
  });
}

tnn_status tnn_mlp_save(const tnn_mlp* mlp, const char* path) {
  return guarded([&] {
    require(mlp, "mlp");
    require(path, "path");
    tnn::save_mlp(mlp->value, path);
  });
}

void tnn_mlp_free(tnn_mlp* mlp) { delete mlp; }

tnn_status tnn_evaluate(const tnn_model* model, const tnn_mlp* mlp, const tnn_corpus* test,
                        const tnn_recognize_params* params, tnn_report** out) {
  return guarded([&] {
    require(test, "test");
    require(out, "out");
    const tnn::RecognizeParams p = params ? to_params(*params) : tnn::RecognizeParams{};
    tnn::EvalReport report;
    if (model) report.tnn = tnn::evaluate_tnn(model->value, test->value, p);
    if (mlp) report.mlp = tnn::evaluate_mlp(mlp->value, test->value);
    if (model && mlp) {
      report.cost = tnn::compare_training_cost(model->value.training, mlp->value.training);
    }
    *out = new tnn_report{std::move(report)};
  });
}

tnn_status tnn_report_json(const tnn_report* report, char** json_out) {
  return guarded([&] {
    require(report, "report");
    require(json_out, "json_out");
    *json_out = duplicate(tnn::serialize_report(report->value));
  });
}

tnn_status tnn_report_text(const tnn_report* report, char** text_out) {
  return guarded([&] {
    require(report, "report");
    require(text_out, "text_out");
    *text_out = duplicate(tnn::render_report(report->value));
  });
}

tnn_status tnn_report_save(const tnn_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    require(path, "path");
    tnn::detail::write_file(path, tnn::serialize_report(report->value), "report");
  });
}

void tnn_report_free(tnn_report* report) { delete report; }

}  // extern "C"
