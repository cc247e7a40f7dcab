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

// Command-line front end. Talks to the library exclusively through the
// C interface in tokeval/tokeval.h. Exit codes: 0 success, 1 I/O or data
// failure, 2 usage, 3 bound violation.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tokeval/tokeval.h"

namespace {

// Shortest representation that parses back to the same double; at least
// 13 significant digits.
std::string format_value(double value) {
  char buf[64];
  for (int precision = 13; precision < 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

int exit_code_for(tokeval_status status) {
  switch (status) {
    case TOKEVAL_OK:
      return 0;
    case TOKEVAL_ERR_USAGE:
      return 2;
    default:
      return 1;
  }
}

int report_failure(tokeval_status status) {
  std::cerr << "tokeval: " << tokeval_last_error() << '\n';
  return exit_code_for(status);
}

std::vector<const char*> path_pointers(const std::vector<std::string>& paths) {
  std::vector<const char*> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.c_str());
  return out;
}

using CorpusPtr = std::unique_ptr<tokeval_corpus, decltype(&tokeval_corpus_free)>;
using ModelPtr = std::unique_ptr<tokeval_model, decltype(&tokeval_model_free)>;
using TablePtr = std::unique_ptr<tokeval_table, decltype(&tokeval_table_free)>;
using StringPtr = std::unique_ptr<char, decltype(&tokeval_string_free)>;

struct ScoreArgs {
  std::vector<std::string> inputs;
  std::string metric = "renyi_efficiency";
  std::vector<std::string> extras;
};

int run_score(const ScoreArgs& args) {
  tokeval_metric_params params;
  tokeval_metric_params_init(&params);
  for (const auto& extra : args.extras) {
    const auto eq = extra.find('=');
    if (eq == std::string::npos) {
      std::cerr << "tokeval: expected key=value, got '" << extra << "'\n";
      return 2;
    }
    const std::string key = extra.substr(0, eq);
    const std::string text = extra.substr(eq + 1);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
      std::cerr << "tokeval: value of '" << key << "' is not a number: '"
                << text << "'\n";
      return 2;
    }
    if (key == "power") {
      params.power = value;
    } else if (key == "perc_start") {
      params.perc_start = value;
    } else if (key == "perc_end") {
      params.perc_end = value;
    } else if (key == "base") {
      params.base = value;
    } else {
      std::cerr << "tokeval: unknown parameter '" << key
                << "' (expected power, perc_start, perc_end, base)\n";
      return 2;
    }
  }

  const auto paths = path_pointers(args.inputs);
  tokeval_corpus* raw = nullptr;
  tokeval_status status = tokeval_corpus_load(paths.data(), paths.size(), &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  CorpusPtr corpus(raw, &tokeval_corpus_free);

  double value = 0.0;
  status = tokeval_score(corpus.get(), args.metric.c_str(), &params, &value);
  if (status != TOKEVAL_OK) return report_failure(status);
  std::cout << format_value(value) << '\n';
  return 0;
}

struct TrainBpeArgs {
  std::vector<std::string> inputs;
  std::size_t vocab_size = 0;
  std::string temperature = "greedy";
  std::uint64_t seed = 0;
  std::string model_out;
};

int run_train_bpe(const TrainBpeArgs& args) {
  const auto paths = path_pointers(args.inputs);
  tokeval_model* raw = nullptr;
  tokeval_status status =
      tokeval_train_bpe(paths.data(), paths.size(), args.vocab_size,
                        args.temperature.c_str(), args.seed, &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  ModelPtr model(raw, &tokeval_model_free);

  status = tokeval_model_save(model.get(), args.model_out.c_str());
  if (status != TOKEVAL_OK) return report_failure(status);
  std::cout << tokeval_model_vocab_size(model.get()) << '\n';
  return 0;
}

struct TrainLzwArgs {
  std::vector<std::string> inputs;
  std::size_t vocab_size = 0;
  std::string model_out;
};

int run_train_lzw(const TrainLzwArgs& args) {
  const auto paths = path_pointers(args.inputs);
  tokeval_model* raw = nullptr;
  tokeval_status status = tokeval_train_lzw(paths.data(), paths.size(),
                                            args.vocab_size, &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  ModelPtr model(raw, &tokeval_model_free);

  status = tokeval_model_save(model.get(), args.model_out.c_str());
  if (status != TOKEVAL_OK) return report_failure(status);
  std::cout << tokeval_model_vocab_size(model.get()) << '\n';
  return 0;
}

struct ApplyArgs {
  std::string model_path;
  std::string input;
  std::string output;
  bool detokenize = false;
};

int run_apply(const ApplyArgs& args) {
  if (args.detokenize) {
    const tokeval_status status =
        tokeval_detokenize_file(args.input.c_str(), args.output.c_str());
    if (status != TOKEVAL_OK) return report_failure(status);
    return 0;
  }
  if (args.model_path.empty()) {
    std::cerr << "tokeval: --model is required unless --detokenize is given\n";
    return 2;
  }
  tokeval_model* raw = nullptr;
  tokeval_status status = tokeval_model_open(args.model_path.c_str(), &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  ModelPtr model(raw, &tokeval_model_free);

  status = tokeval_model_apply_file(model.get(), args.input.c_str(),
                                    args.output.c_str());
  if (status != TOKEVAL_OK) return report_failure(status);
  return 0;
}

struct VerifyArgs {
  std::vector<std::string> inputs;
  double alpha = 2.5;
  double base = 2.0;
};

int run_verify_bounds(const VerifyArgs& args) {
  const auto paths = path_pointers(args.inputs);
  tokeval_corpus* raw = nullptr;
  tokeval_status status = tokeval_corpus_load(paths.data(), paths.size(), &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  CorpusPtr corpus(raw, &tokeval_corpus_free);

  char* report = nullptr;
  int all_pass = 0;
  status = tokeval_verify_bounds(corpus.get(), args.alpha, args.base, &report,
                                 &all_pass);
  if (status != TOKEVAL_OK) return report_failure(status);
  StringPtr text(report, &tokeval_string_free);
  std::cout << text.get();
  if (all_pass == 0) {
    std::cerr << "tokeval: bound violated\n";
    return 3;
  }
  return 0;
}

struct CorrelateArgs {
  std::string table_path;
  std::string predictor;
};

int run_correlate(const CorrelateArgs& args) {
  tokeval_table* raw = nullptr;
  tokeval_status status = tokeval_table_open(args.table_path.c_str(), &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  TablePtr table(raw, &tokeval_table_free);

  tokeval_correlation pearson;
  tokeval_correlation spearman;
  status = tokeval_correlate(table.get(), args.predictor.c_str(), &pearson,
                             &spearman);
  if (status != TOKEVAL_OK) return report_failure(status);
  std::cout << "n\t" << pearson.n << '\n'
            << "pearson_r\t" << format_value(pearson.coefficient) << '\n'
            << "pearson_p\t" << format_value(pearson.p_value) << '\n'
            << "pearson_r2\t" << format_value(pearson.r_squared) << '\n'
            << "spearman_rho\t" << format_value(spearman.coefficient) << '\n'
            << "spearman_p\t" << format_value(spearman.p_value) << '\n'
            << "spearman_rho2\t" << format_value(spearman.r_squared) << '\n';
  return 0;
}

struct GridSearchArgs {
  std::string table_path;
  std::string grid;
  std::string corpus_column = "corpus";
  std::string output;
  bool holdout = false;
};

void print_best(std::ostream& out, const std::string& point_name,
                const std::string& point_value,
                const tokeval_correlation& best, bool holdout,
                const tokeval_correlation& holdout_corr) {
  out << point_name << '\t' << point_value << '\n'
      << "pearson_r\t" << format_value(best.coefficient) << '\n'
      << "pearson_p\t" << format_value(best.p_value) << '\n'
      << "pearson_r2\t" << format_value(best.r_squared) << '\n'
      << "n\t" << best.n << '\n';
  if (holdout) {
    out << "holdout_r\t" << format_value(holdout_corr.coefficient) << '\n'
        << "holdout_p\t" << format_value(holdout_corr.p_value) << '\n'
        << "holdout_n\t" << holdout_corr.n << '\n';
  }
}

// The grid TSV goes to --output when given, else to stdout; the best-point
// summary goes to stdout when the TSV went to a file, else to stderr.
int emit_grid(const GridSearchArgs& args, const char* tsv,
              const std::string& point_name, const std::string& point_value,
              const tokeval_correlation& best,
              const tokeval_correlation& holdout_corr) {
  if (args.output.empty()) {
    std::cout << tsv;
    print_best(std::cerr, point_name, point_value, best, args.holdout,
               holdout_corr);
    return 0;
  }
  std::ofstream out(args.output, std::ios::binary);
  if (!out) {
    std::cerr << "tokeval: cannot open file: " << args.output << '\n';
    return 1;
  }
  out << tsv;
  out.flush();
  if (!out) {
    std::cerr << "tokeval: cannot write file: " << args.output << '\n';
    return 1;
  }
  print_best(std::cout, point_name, point_value, best, args.holdout,
             holdout_corr);
  return 0;
}

int run_grid_search(const GridSearchArgs& args) {
  tokeval_table* raw = nullptr;
  tokeval_status status = tokeval_table_open(args.table_path.c_str(), &raw);
  if (status != TOKEVAL_OK) return report_failure(status);
  TablePtr table(raw, &tokeval_table_free);

  const int holdout = args.holdout ? 1 : 0;
  tokeval_correlation best{};
  tokeval_correlation holdout_corr{};
  char* tsv = nullptr;

  if (args.grid == "alpha") {
    double best_alpha = 0.0;
    status = tokeval_grid_search_alpha(table.get(), args.corpus_column.c_str(),
                                       holdout, &tsv, &best_alpha, &best,
                                       &holdout_corr);
    if (status != TOKEVAL_OK) return report_failure(status);
    StringPtr text(tsv, &tokeval_string_free);
    return emit_grid(args, text.get(), "best_alpha", format_value(best_alpha),
                     best, holdout_corr);
  }
  double best_lo = 0.0;
  double best_hi = 0.0;
  status = tokeval_grid_search_percentile(
      table.get(), args.corpus_column.c_str(), holdout, &tsv, &best_lo,
      &best_hi, &best, &holdout_corr);
  if (status != TOKEVAL_OK) return report_failure(status);
  StringPtr text(tsv, &tokeval_string_free);
  return emit_grid(args, text.get(), "best_window",
                   format_value(best_lo) + "\t" + format_value(best_hi), best,
                   holdout_corr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tokenization evaluation toolkit"};
  app.require_subcommand(1);

  ScoreArgs score;
  auto* cmd_score = app.add_subcommand(
      "score", "Compute a metric over tokenized text files");
  cmd_score->add_option("-i,--input", score.inputs, "Tokenized input files")
      ->required()
      ->expected(-1);
  std::string metric_help = "Metric name, one of: ";
  for (const char* c = tokeval_metric_list(); *c != '\0'; ++c) {
    metric_help += (*c == '\n') ? ", " : std::string(1, *c);
  }
  cmd_score->add_option("-m,--metric", score.metric, metric_help);
  cmd_score->add_option("-e,--extra", score.extras,
                        "Metric parameter as key=value (power, perc_start, "
                        "perc_end, base)");

  TrainBpeArgs train_bpe;
  auto* cmd_train_bpe = app.add_subcommand(
      "train-bpe", "Train an annealed byte-pair model on raw text");
  cmd_train_bpe->add_option("--input", train_bpe.inputs, "Raw text files")
      ->required()
      ->expected(-1);
  cmd_train_bpe
      ->add_option("--vocab-size", train_bpe.vocab_size,
                   "Target vocabulary size")
      ->required();
  cmd_train_bpe->add_option(
      "--temperature", train_bpe.temperature,
      "Merge selection: greedy, antigreedy, or a nonzero real");
  cmd_train_bpe->add_option("--seed", train_bpe.seed, "Sampling seed");
  cmd_train_bpe
      ->add_option("--model-out", train_bpe.model_out, "Model file to write")
      ->required();

  TrainLzwArgs train_lzw;
  auto* cmd_train_lzw = app.add_subcommand(
      "train-lzw", "Train a longest-match dictionary model on raw text");
  cmd_train_lzw->add_option("--input", train_lzw.inputs, "Raw text files")
      ->required()
      ->expected(-1);
  cmd_train_lzw
      ->add_option("--vocab-size", train_lzw.vocab_size,
                   "Target dictionary size")
      ->required();
  cmd_train_lzw
      ->add_option("--model-out", train_lzw.model_out, "Model file to write")
      ->required();

  ApplyArgs apply;
  auto* cmd_apply = app.add_subcommand(
      "apply", "Tokenize a file with a trained model, or invert it");
  cmd_apply->add_option("--model", apply.model_path,
                        "Model file (required unless --detokenize)");
  cmd_apply->add_option("--input", apply.input, "Input file")->required();
  cmd_apply->add_option("--output", apply.output, "Output file")->required();
  cmd_apply->add_flag("--detokenize", apply.detokenize,
                      "Rejoin tokenized text into plain words");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand(
      "verify-bounds", "Check the coding-theorem bounds on a corpus");
  cmd_verify->add_option("-i,--input", verify.inputs, "Tokenized input files")
      ->required()
      ->expected(-1);
  cmd_verify->add_option("--alpha", verify.alpha, "Entropy order (default 2.5)");
  cmd_verify->add_option("--base", verify.base,
                         "Code alphabet size (default 2)");

  CorrelateArgs correlate;
  auto* cmd_correlate = app.add_subcommand(
      "correlate", "Correlate a predictor column with performance");
  cmd_correlate->add_option("--table", correlate.table_path,
                            "Observation table (TSV)")
      ->required();
  cmd_correlate->add_option("--predictor", correlate.predictor,
                            "Predictor column name")
      ->required();

  GridSearchArgs grid_search;
  auto* cmd_grid_search = app.add_subcommand(
      "grid-search", "Scan entropy orders or percentile windows for the "
                     "best performance correlation");
  cmd_grid_search->add_option("--table", grid_search.table_path,
                              "Observation table (TSV)")
      ->required();
  cmd_grid_search->add_option("--grid", grid_search.grid,
                              "Which grid to scan: alpha or percentile")
      ->required()
      ->check(CLI::IsMember({"alpha", "percentile"}));
  cmd_grid_search->add_option("--corpus-column", grid_search.corpus_column,
                              "Table column holding per-run corpus paths");
  cmd_grid_search->add_flag("--holdout", grid_search.holdout,
                            "Pick the best point on even-parity runs and "
                            "re-score it on the rest");
  cmd_grid_search->add_option("--output", grid_search.output,
                              "Write the grid TSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_score->parsed()) return run_score(score);
  if (cmd_train_bpe->parsed()) return run_train_bpe(train_bpe);
  if (cmd_train_lzw->parsed()) return run_train_lzw(train_lzw);
  if (cmd_apply->parsed()) return run_apply(apply);
  if (cmd_verify->parsed()) return run_verify_bounds(verify);
  if (cmd_correlate->parsed()) return run_correlate(correlate);
  if (cmd_grid_search->parsed()) return run_grid_search(grid_search);
  return 2;
}
