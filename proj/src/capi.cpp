// Copyright 2026 The tokeval authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tokeval/tokeval.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "analysis.hpp"
#include "bpe.hpp"
#include "coding.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "lzw.hpp"
#include "metrics.hpp"
#include "model_io.hpp"
#include "stats.hpp"
#include "text.hpp"

struct tokeval_corpus {
  tokeval::TokenizedCorpus value;
};

struct tokeval_model {
  tokeval::TokenizerModel value;
  // Appliers are built on first use and reused across calls.
  std::unique_ptr<tokeval::BpeApplier> bpe;
  std::unique_ptr<tokeval::LzwApplier> lzw;

  std::vector<std::string> apply(std::string_view text) {
    if (const auto* m = std::get_if<tokeval::BpeModel>(&value)) {
      if (!bpe) bpe = std::make_unique<tokeval::BpeApplier>(*m);
      return bpe->apply_text(text);
    }
    const auto& m = std::get<tokeval::LzwModel>(value);
    if (!lzw) lzw = std::make_unique<tokeval::LzwApplier>(m);
    return lzw->apply_text(text);
  }
};

struct tokeval_table {
  tokeval::ObservationTable value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename Fn>
tokeval_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return TOKEVAL_OK;
  } catch (const tokeval::IoError& e) {
    g_last_error = e.what();
    return TOKEVAL_ERR_IO;
  } catch (const tokeval::UsageError& e) {
    g_last_error = e.what();
    return TOKEVAL_ERR_USAGE;
  } catch (const tokeval::DomainError& e) {
    g_last_error = e.what();
    return TOKEVAL_ERR_DOMAIN;
  } catch (const tokeval::CoverageError& e) {
    g_last_error = e.what();
    return TOKEVAL_ERR_COVERAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TOKEVAL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return TOKEVAL_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw tokeval::UsageError(what);
}

std::vector<std::string> collect_paths(const char* const* paths,
                                       size_t num_paths) {
  require(paths != nullptr || num_paths == 0, "paths is null");
  std::vector<std::string> out;
  out.reserve(num_paths);
  for (size_t i = 0; i < num_paths; ++i) {
    require(paths[i] != nullptr, "path entry is null");
    out.emplace_back(paths[i]);
  }
  return out;
}

std::vector<std::string> read_raw_lines(std::span<const std::string> paths) {
  if (paths.empty()) {
    throw tokeval::UsageError("at least one input file is required");
  }
  std::vector<std::string> lines;
  for (const auto& path : paths) {
    auto file_lines = tokeval::read_lines(path);
    lines.insert(lines.end(), file_lines.begin(), file_lines.end());
  }
  return lines;
}

std::vector<std::string> split_newlines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

void fill_correlation(const tokeval::Correlation& in, tokeval_correlation* out) {
  if (out == nullptr) return;
  out->coefficient = in.coefficient;
  out->p_value = in.p_value;
  out->r_squared = in.r_squared();
  out->n = in.n;
}

}  // namespace

extern "C" {

const char* tokeval_version(void) { return "1.0.0"; }

const char* tokeval_last_error(void) { return g_last_error.c_str(); }

void tokeval_string_free(char* text) { std::free(text); }

tokeval_status tokeval_corpus_load(const char* const* paths, size_t num_paths,
                                   tokeval_corpus** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    auto owned = collect_paths(paths, num_paths);
    auto handle = std::make_unique<tokeval_corpus>();
    handle->value = tokeval::load_tokenized(owned);
    *out = handle.release();
  });
}

tokeval_status tokeval_corpus_from_text(const char* text,
                                        tokeval_corpus** out) {
  return guarded([&] {
    require(text != nullptr, "text is null");
    require(out != nullptr, "out is null");
    const auto lines = split_newlines(text);
    auto handle = std::make_unique<tokeval_corpus>();
    handle->value = tokeval::corpus_from_lines(lines);
    *out = handle.release();
  });
}

void tokeval_corpus_free(tokeval_corpus* corpus) { delete corpus; }

size_t tokeval_corpus_num_texts(const tokeval_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.num_texts();
}

size_t tokeval_corpus_num_tokens(const tokeval_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.num_tokens();
}

size_t tokeval_corpus_vocab_size(const tokeval_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.vocab_size();
}

void tokeval_metric_params_init(tokeval_metric_params* params) {
  if (params == nullptr) return;
  const tokeval::MetricParams defaults;
  params->power = defaults.power;
  params->perc_start = defaults.perc_start;
  params->perc_end = defaults.perc_end;
  params->base = defaults.base;
}

const char* tokeval_metric_list(void) {
  static const std::string joined = [] {
    std::string text;
    for (const auto& name : tokeval::metric_names()) {
      if (!text.empty()) text += '\n';
      text += name;
    }
    return text;
  }();
  return joined.c_str();
}

tokeval_status tokeval_score(const tokeval_corpus* corpus, const char* metric,
                             const tokeval_metric_params* params, double* out) {
  return guarded([&] {
    require(corpus != nullptr, "corpus is null");
    require(metric != nullptr, "metric is null");
    require(out != nullptr, "out is null");
    tokeval::MetricParams mp;
    if (params != nullptr) {
      mp.power = params->power;
      mp.perc_start = params->perc_start;
      mp.perc_end = params->perc_end;
      mp.base = params->base;
    }
    *out = tokeval::compute_metric(corpus->value, metric, mp);
  });
}

tokeval_status tokeval_verify_bounds(const tokeval_corpus* corpus, double alpha,
                                     double base, char** report,
                                     int* all_pass) {
  return guarded([&] {
    require(corpus != nullptr, "corpus is null");
    const int radix = static_cast<int>(base);
    require(static_cast<double>(radix) == base && radix >= 2,
            "base must be an integer >= 2");
    const auto result = tokeval::verify_bounds(corpus->value, alpha, radix);
    if (report != nullptr) {
      char* text = dup_string(tokeval::to_text(result));
      require(text != nullptr, "out of memory");
      *report = text;
    }
    if (all_pass != nullptr) *all_pass = result.all_pass ? 1 : 0;
  });
}

tokeval_status tokeval_train_bpe(const char* const* paths, size_t num_paths,
                                 size_t vocab_target, const char* temperature,
                                 uint64_t seed, tokeval_model** out) {
  return guarded([&] {
    require(temperature != nullptr, "temperature is null");
    require(out != nullptr, "out is null");
    const auto owned = collect_paths(paths, num_paths);
    const auto lines = read_raw_lines(owned);
    const auto temp = tokeval::Temperature::parse(temperature);
    auto handle = std::make_unique<tokeval_model>();
    handle->value = tokeval::train_bpe(lines, vocab_target, temp, seed);
    *out = handle.release();
  });
}

tokeval_status tokeval_train_lzw(const char* const* paths, size_t num_paths,
                                 size_t vocab_target, tokeval_model** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    const auto owned = collect_paths(paths, num_paths);
    const auto lines = read_raw_lines(owned);
    auto handle = std::make_unique<tokeval_model>();
    handle->value = tokeval::train_lzw(lines, vocab_target);
    *out = handle.release();
  });
}

tokeval_status tokeval_model_open(const char* path, tokeval_model** out) {
  return guarded([&] {
    require(path != nullptr, "path is null");
    require(out != nullptr, "out is null");
    auto handle = std::make_unique<tokeval_model>();
    handle->value = tokeval::load_model(path);
    *out = handle.release();
  });
}

tokeval_status tokeval_model_save(const tokeval_model* model,
                                  const char* path) {
  return guarded([&] {
    require(model != nullptr, "model is null");
    require(path != nullptr, "path is null");
    tokeval::save_model(model->value, path);
  });
}

void tokeval_model_free(tokeval_model* model) { delete model; }

const char* tokeval_model_kind(const tokeval_model* model) {
  if (model == nullptr) return "";
  return std::holds_alternative<tokeval::BpeModel>(model->value) ? "bpe"
                                                                 : "lzw";
}

size_t tokeval_model_vocab_size(const tokeval_model* model) {
  if (model == nullptr) return 0;
  if (const auto* m = std::get_if<tokeval::BpeModel>(&model->value)) {
    return m->vocab_size;
  }
  return std::get<tokeval::LzwModel>(model->value).entries.size();
}

tokeval_status tokeval_model_apply_text(tokeval_model* model, const char* text,
                                        char** out) {
  return guarded([&] {
    require(model != nullptr, "model is null");
    require(text != nullptr, "text is null");
    require(out != nullptr, "out is null");
    const auto tokens = model->apply(text);
    char* joined = dup_string(join_tokens(tokens));
    require(joined != nullptr, "out of memory");
    *out = joined;
  });
}

tokeval_status tokeval_model_apply_file(tokeval_model* model,
                                        const char* input_path,
                                        const char* output_path) {
  return guarded([&] {
    require(model != nullptr, "model is null");
    require(input_path != nullptr, "input path is null");
    require(output_path != nullptr, "output path is null");
    const auto lines = tokeval::read_lines(input_path);
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      throw tokeval::IoError(std::string("cannot open file: ") + output_path);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        out << join_tokens(model->apply(lines[i])) << '\n';
      } catch (const tokeval::CoverageError& e) {
        throw tokeval::CoverageError("line " + std::to_string(i + 1) + ": " +
                                     e.what());
      }
    }
    out.flush();
    if (!out) {
      throw tokeval::IoError(std::string("cannot write file: ") + output_path);
    }
  });
}

tokeval_status tokeval_detokenize_text(const char* text, char** out) {
  return guarded([&] {
    require(text != nullptr, "text is null");
    require(out != nullptr, "out is null");
    const auto views = tokeval::split_whitespace(text);
    std::vector<std::string> tokens(views.begin(), views.end());
    char* joined = dup_string(tokeval::detokenize(tokens));
    require(joined != nullptr, "out of memory");
    *out = joined;
  });
}

tokeval_status tokeval_detokenize_file(const char* input_path,
                                       const char* output_path) {
  return guarded([&] {
    require(input_path != nullptr, "input path is null");
    require(output_path != nullptr, "output path is null");
    const auto lines = tokeval::read_lines(input_path);
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      throw tokeval::IoError(std::string("cannot open file: ") + output_path);
    }
    for (const auto& line : lines) {
      const auto views = tokeval::split_whitespace(line);
      const std::vector<std::string> tokens(views.begin(), views.end());
      out << tokeval::detokenize(tokens) << '\n';
    }
    out.flush();
    if (!out) {
      throw tokeval::IoError(std::string("cannot write file: ") + output_path);
    }
  });
}

tokeval_status tokeval_table_open(const char* path, tokeval_table** out) {
  return guarded([&] {
    require(path != nullptr, "path is null");
    require(out != nullptr, "out is null");
    auto handle = std::make_unique<tokeval_table>();
    handle->value = tokeval::load_table(path);
    *out = handle.release();
  });
}

void tokeval_table_free(tokeval_table* table) { delete table; }

size_t tokeval_table_num_rows(const tokeval_table* table) {
  return table == nullptr ? 0 : table->value.num_rows();
}

tokeval_status tokeval_correlate(const tokeval_table* table,
                                 const char* predictor,
                                 tokeval_correlation* pearson,
                                 tokeval_correlation* spearman) {
  return guarded([&] {
    require(table != nullptr, "table is null");
    require(predictor != nullptr, "predictor is null");
    const auto pair = tokeval::correlate_predictor(table->value, predictor);
    fill_correlation(pair.pearson, pearson);
    fill_correlation(pair.spearman, spearman);
  });
}

tokeval_status tokeval_grid_search_alpha(const tokeval_table* table,
                                         const char* corpus_column, int holdout,
                                         char** curve_tsv, double* best_alpha,
                                         tokeval_correlation* best,
                                         tokeval_correlation* holdout_corr) {
  return guarded([&] {
    require(table != nullptr, "table is null");
    require(corpus_column != nullptr, "corpus column is null");
    const auto grid = tokeval::default_alpha_grid();
    const auto result = tokeval::grid_search_alpha(table->value, corpus_column,
                                                   grid, holdout != 0);
    if (curve_tsv != nullptr) {
      char* text = dup_string(tokeval::alpha_curve_tsv(result));
      require(text != nullptr, "out of memory");
      *curve_tsv = text;
    }
    if (best_alpha != nullptr) *best_alpha = result.best_order;
    fill_correlation(result.best, best);
    if (result.used_holdout) fill_correlation(result.holdout, holdout_corr);
  });
}

tokeval_status tokeval_grid_search_percentile(
    const tokeval_table* table, const char* corpus_column, int holdout,
    char** matrix_tsv, double* best_lo, double* best_hi,
    tokeval_correlation* best, tokeval_correlation* holdout_corr) {
  return guarded([&] {
    require(table != nullptr, "table is null");
    require(corpus_column != nullptr, "corpus column is null");
    const auto result = tokeval::grid_search_percentile(
        table->value, corpus_column, holdout != 0);
    if (matrix_tsv != nullptr) {
      char* text = dup_string(tokeval::percentile_matrix_tsv(result));
      require(text != nullptr, "out of memory");
      *matrix_tsv = text;
    }
    if (best_lo != nullptr) *best_lo = result.best_lo;
    if (best_hi != nullptr) *best_hi = result.best_hi;
    fill_correlation(result.best, best);
    if (result.used_holdout) fill_correlation(result.holdout, holdout_corr);
  });
}

}  // extern "C"
