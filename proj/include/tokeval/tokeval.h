/* Copyright 2026 The tokeval authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the tokeval library.
 *
 * All functions return tokeval_status; out-parameters are written only
 * on TOKEVAL_OK. On failure tokeval_last_error() returns a message for
 * the calling thread, valid until its next tokeval call. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with tokeval_string_free(). Handles are not thread-safe;
 * distinct handles may be used from distinct threads freely.
 */

#ifndef TOKEVAL_TOKEVAL_H_
#define TOKEVAL_TOKEVAL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TOKEVAL_BUILD)
#define TOKEVAL_API __declspec(dllexport)
#else
#define TOKEVAL_API __declspec(dllimport)
#endif
#else
#define TOKEVAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tokeval_status {
  TOKEVAL_OK = 0,
  TOKEVAL_ERR_IO = 1,       /* unreadable/unwritable or malformed file */
  TOKEVAL_ERR_USAGE = 2,    /* invalid argument or parameter */
  TOKEVAL_ERR_DOMAIN = 3,   /* input outside a metric's domain */
  TOKEVAL_ERR_COVERAGE = 4, /* token or character not covered by a model */
  TOKEVAL_ERR_INTERNAL = 5  /* unexpected failure */
} tokeval_status;

typedef struct tokeval_corpus tokeval_corpus;
typedef struct tokeval_model tokeval_model;
typedef struct tokeval_table tokeval_table;

TOKEVAL_API const char* tokeval_version(void);

/* Message for the most recent failure on this thread; empty string if the
 * most recent call succeeded. */
TOKEVAL_API const char* tokeval_last_error(void);

TOKEVAL_API void tokeval_string_free(char* text);

/* ---- Corpora -------------------------------------------------------- */

/* Loads one or more tokenized text files (one text per line, tokens
 * separated by blanks) into a pooled corpus. */
TOKEVAL_API tokeval_status tokeval_corpus_load(const char* const* paths,
                                               size_t num_paths,
                                               tokeval_corpus** out);

/* Same ingestion from an in-memory buffer; texts separated by '\n'. */
TOKEVAL_API tokeval_status tokeval_corpus_from_text(const char* text,
                                                    tokeval_corpus** out);

TOKEVAL_API void tokeval_corpus_free(tokeval_corpus* corpus);

TOKEVAL_API size_t tokeval_corpus_num_texts(const tokeval_corpus* corpus);
TOKEVAL_API size_t tokeval_corpus_num_tokens(const tokeval_corpus* corpus);
TOKEVAL_API size_t tokeval_corpus_vocab_size(const tokeval_corpus* corpus);

/* ---- Metrics -------------------------------------------------------- */

typedef struct tokeval_metric_params {
  double power;      /* entropy order for the renyi_* metrics */
  double perc_start; /* percentile_freq window start */
  double perc_end;   /* percentile_freq window end */
  double base;       /* logarithm base for the entropy metrics */
} tokeval_metric_params;

/* power=2.5, perc_start=0.03, perc_end=0.83, base=2. */
TOKEVAL_API void tokeval_metric_params_init(tokeval_metric_params* params);

/* Newline-separated list of metric names accepted by tokeval_score. */
TOKEVAL_API const char* tokeval_metric_list(void);

/* Computes the named metric; NULL params means defaults. */
TOKEVAL_API tokeval_status tokeval_score(const tokeval_corpus* corpus,
                                         const char* metric,
                                         const tokeval_metric_params* params,
                                         double* out);

/* Builds Huffman and Campbell codes over the corpus and checks the
 * coding-theorem sandwiches and the length decomposition identity.
 * `report` receives "name<TAB>value" lines; `all_pass` is 1 iff every
 * checked bound holds. */
TOKEVAL_API tokeval_status tokeval_verify_bounds(const tokeval_corpus* corpus,
                                                 double alpha, double base,
                                                 char** report, int* all_pass);

/* ---- Tokenizer models ----------------------------------------------- */

/* Trains a byte-pair model over raw text files. `temperature` is
 * "greedy", "antigreedy", or a nonzero real number. */
TOKEVAL_API tokeval_status tokeval_train_bpe(const char* const* paths,
                                             size_t num_paths,
                                             size_t vocab_target,
                                             const char* temperature,
                                             uint64_t seed,
                                             tokeval_model** out);

/* Trains a longest-match dictionary model over raw text files. */
TOKEVAL_API tokeval_status tokeval_train_lzw(const char* const* paths,
                                             size_t num_paths,
                                             size_t vocab_target,
                                             tokeval_model** out);

TOKEVAL_API tokeval_status tokeval_model_open(const char* path,
                                              tokeval_model** out);
TOKEVAL_API tokeval_status tokeval_model_save(const tokeval_model* model,
                                              const char* path);
TOKEVAL_API void tokeval_model_free(tokeval_model* model);

/* "bpe" or "lzw". */
TOKEVAL_API const char* tokeval_model_kind(const tokeval_model* model);
TOKEVAL_API size_t tokeval_model_vocab_size(const tokeval_model* model);

/* Tokenizes one text; pieces are space-joined, word-continuation pieces
 * prefixed with "@@". */
TOKEVAL_API tokeval_status tokeval_model_apply_text(tokeval_model* model,
                                                    const char* text,
                                                    char** out);

/* Tokenizes a file line by line. Coverage failures name the offending
 * character and line number. */
TOKEVAL_API tokeval_status tokeval_model_apply_file(tokeval_model* model,
                                                    const char* input_path,
                                                    const char* output_path);

/* Inverts the rendered form ("@@" pieces rejoin their word). */
TOKEVAL_API tokeval_status tokeval_detokenize_text(const char* text,
                                                   char** out);
TOKEVAL_API tokeval_status tokeval_detokenize_file(const char* input_path,
                                                   const char* output_path);

/* ---- Correlation analysis ------------------------------------------- */

typedef struct tokeval_correlation {
  double coefficient;
  double p_value;
  double r_squared;
  size_t n;
} tokeval_correlation;

/* Opens a tab-separated observation table with header
 * "run<TAB>group<TAB><predictor...><TAB>performance". */
TOKEVAL_API tokeval_status tokeval_table_open(const char* path,
                                              tokeval_table** out);
TOKEVAL_API void tokeval_table_free(tokeval_table* table);
TOKEVAL_API size_t tokeval_table_num_rows(const tokeval_table* table);

/* Pearson and Spearman of a predictor column against performance.
 * Either out-parameter may be NULL. */
TOKEVAL_API tokeval_status tokeval_correlate(const tokeval_table* table,
                                             const char* predictor,
                                             tokeval_correlation* pearson,
                                             tokeval_correlation* spearman);

/* Correlates entropy efficiency with performance over the order grid
 * 0, 0.1, ..., 5.0, infinity. `corpus_column` names the table column
 * holding per-run tokenized-text paths (relative to the table file).
 * With nonzero `holdout`, the best order is chosen on the even half of
 * the rows (by run-id parity) and re-scored on the odd half into
 * `holdout_corr`. `curve_tsv` and `holdout_corr` may be NULL. */
TOKEVAL_API tokeval_status tokeval_grid_search_alpha(
    const tokeval_table* table, const char* corpus_column, int holdout,
    char** curve_tsv, double* best_alpha, tokeval_correlation* best,
    tokeval_correlation* holdout_corr);

/* Exhaustive search over percentile-frequency windows [lo, hi] on the
 * 1%-step grid. Same conventions as tokeval_grid_search_alpha. */
TOKEVAL_API tokeval_status tokeval_grid_search_percentile(
    const tokeval_table* table, const char* corpus_column, int holdout,
    char** matrix_tsv, double* best_lo, double* best_hi,
    tokeval_correlation* best, tokeval_correlation* holdout_corr);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TOKEVAL_TOKEVAL_H_ */
