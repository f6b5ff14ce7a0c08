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

/* C interface to the document recognizer.
 *
 * All objects are opaque handles released with their *_free function.
 * Functions return TNN_OK or an error status; the message of the last
 * failure on the calling thread is available from tnn_last_error().
 * Strings returned through char** are released with tnn_string_free(). */

#ifndef TNN_TNN_H_
#define TNN_TNN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TNN_BUILDING_LIBRARY)
#define TNN_API __declspec(dllexport)
#else
#define TNN_API __declspec(dllimport)
#endif
#else
#define TNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tnn_status {
  TNN_OK = 0,
  TNN_ERR_INVALID_ARGUMENT = 1,
  TNN_ERR_IO = 2,
  TNN_ERR_PARSE = 3,
  TNN_ERR_VALIDATION = 4,
  TNN_ERR_VERSION = 5,
  TNN_ERR_TOPOLOGY = 6,
  TNN_ERR_INTERNAL = 7
} tnn_status;

typedef struct tnn_config tnn_config;
typedef struct tnn_corpus tnn_corpus;
typedef struct tnn_model tnn_model;
typedef struct tnn_mlp tnn_mlp;
typedef struct tnn_report tnn_report;

typedef struct tnn_recognize_params {
  double tau_accept;
  double tau_margin;
  double tau_struct;
  size_t max_passes;
  size_t blame_budget;
} tnn_recognize_params;

typedef struct tnn_gen_spec {
  uint64_t seed;
  size_t invoices;
  size_t forms;
  size_t letters;
  double jitter;
  double drop_rate;
  double distort_rate;
  /* Optional per-structure drop probabilities; may be NULL when count is 0. */
  const char* const* drop_override_names;
  const double* drop_override_rates;
  size_t drop_override_count;
  /* Document ids are "<prefix>-NNNN"; NULL means "doc". */
  const char* id_prefix;
} tnn_gen_spec;

typedef struct tnn_training_stats {
  size_t samples;
  size_t epochs;
  uint64_t update_passes;
  uint64_t weight_updates;
  double final_mse;
  int converged;
} tnn_training_stats;

TNN_API const char* tnn_last_error(void);
TNN_API const char* tnn_status_name(tnn_status status);
TNN_API void tnn_string_free(char* text);

/* Config: topology, extractors, hyperparameters, recognition thresholds. */
TNN_API tnn_status tnn_config_default(tnn_config** out);
TNN_API tnn_status tnn_config_load(const char* path, tnn_config** out);
TNN_API tnn_status tnn_config_save(const tnn_config* config, const char* path);
TNN_API tnn_status tnn_config_get_recognize(const tnn_config* config, tnn_recognize_params* out);
TNN_API tnn_status tnn_config_set_recognize(tnn_config* config, const tnn_recognize_params* params);
TNN_API tnn_status tnn_config_get_seed(const tnn_config* config, uint64_t* out);
TNN_API tnn_status tnn_config_set_seed(tnn_config* config, uint64_t seed);
TNN_API void tnn_config_free(tnn_config* config);

/* Corpora. Labels are checked against the config's topology, or the default
 * topology when config is NULL. */
TNN_API tnn_status tnn_corpus_load(const char* path, const tnn_config* config,
                                   tnn_corpus** out);
TNN_API tnn_status tnn_corpus_save(const tnn_corpus* corpus, const char* path);
TNN_API tnn_status tnn_corpus_generate(const tnn_gen_spec* spec, tnn_corpus** out);
TNN_API tnn_status tnn_corpus_concat(const tnn_corpus* a, const tnn_corpus* b, tnn_corpus** out);
/* First `count` documents of each class, in corpus order. */
TNN_API tnn_status tnn_corpus_take_per_class(const tnn_corpus* corpus, size_t count,
                                             tnn_corpus** out);
TNN_API size_t tnn_corpus_size(const tnn_corpus* corpus);
/* Id of document `index`, owned by the corpus; NULL when out of range. */
TNN_API const char* tnn_corpus_id(const tnn_corpus* corpus, size_t index);
/* Index of the document with this id, or TNN_ERR_INVALID_ARGUMENT. */
TNN_API tnn_status tnn_corpus_find(const tnn_corpus* corpus, const char* id, size_t* index);
TNN_API void tnn_corpus_free(tnn_corpus* corpus);

/* Transparent network. */
TNN_API tnn_status tnn_model_train(const tnn_config* config, const tnn_corpus* corpus,
                                   tnn_model** out, tnn_training_stats* total);
TNN_API tnn_status tnn_model_load(const char* path, tnn_model** out);
TNN_API tnn_status tnn_model_save(const tnn_model* model, const char* path);
TNN_API void tnn_model_free(tnn_model* model);

/* Recognition result of one document as JSON, including the pass trace. */
TNN_API tnn_status tnn_recognize_json(const tnn_model* model, const tnn_corpus* corpus,
                                      size_t index, const tnn_recognize_params* params,
                                      char** json_out);

/* MLP baseline. */
TNN_API tnn_status tnn_mlp_train(const tnn_config* config, const tnn_corpus* corpus,
                                 tnn_mlp** out, tnn_training_stats* stats);
TNN_API tnn_status tnn_mlp_load(const char* path, tnn_mlp** out);
TNN_API tnn_status tnn_mlp_save(const tnn_mlp* mlp, const char* path);
TNN_API void tnn_mlp_free(tnn_mlp* mlp);

/* Evaluation. Either model may be NULL; the cost comparison needs both. */
TNN_API tnn_status tnn_evaluate(const tnn_model* model, const tnn_mlp* mlp,
                                const tnn_corpus* test, const tnn_recognize_params* params,
                                tnn_report** out);
TNN_API tnn_status tnn_report_json(const tnn_report* report, char** json_out);
TNN_API tnn_status tnn_report_text(const tnn_report* report, char** text_out);
TNN_API tnn_status tnn_report_save(const tnn_report* report, const char* path);
TNN_API void tnn_report_free(tnn_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TNN_TNN_H_ */
