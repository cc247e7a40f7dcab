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

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "corpus.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "text.hpp"

namespace tokeval {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_cell(const std::string& cell, const std::string& column) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw DomainError("column '" + column + "' has non-numeric value '" +
                      cell + "'");
  }
  return value;
}

// Parity of the run id's trailing integer; row index parity when the id
// has no digit suffix.
int run_parity(const std::string& run_id, std::size_t row_index) {
  std::size_t end = run_id.size();
  std::size_t begin = end;
  while (begin > 0 && run_id[begin - 1] >= '0' && run_id[begin - 1] <= '9') {
    --begin;
  }
  if (begin == end) {
    return static_cast<int>(row_index % 2);
  }
  return (run_id[end - 1] - '0') % 2;
}

struct RowSplit {
  std::vector<std::size_t> select;   // rows the argmax is chosen on
  std::vector<std::size_t> holdout;  // rows the best point is re-scored on
};

RowSplit split_rows(const ObservationTable& table, bool holdout) {
  RowSplit split;
  if (!holdout) {
    split.select.resize(table.num_rows());
    for (std::size_t i = 0; i < table.num_rows(); ++i) split.select[i] = i;
    return split;
  }
  const std::size_t run_col = table.column_index("run");
  for (std::size_t i = 0; i < table.num_rows(); ++i) {
    if (run_parity(table.rows[i][run_col], i) == 0) {
      split.select.push_back(i);
    } else {
      split.holdout.push_back(i);
    }
  }
  if (split.select.size() < 3 || split.holdout.size() < 3) {
    throw DomainError("holdout split leaves fewer than 3 rows in one half");
  }
  return split;
}

template <typename T>
std::vector<T> take(const std::vector<T>& values,
                    const std::vector<std::size_t>& indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (const std::size_t i : indices) out.push_back(values[i]);
  return out;
}

// Pooled unigram distribution for every row's corpus file, cached by
// resolved path so repeated runs over one corpus load it once.
std::vector<UnigramDistribution> row_distributions(
    const ObservationTable& table, const std::string& corpus_column) {
  const auto paths = table.text_column(corpus_column);
  std::map<std::string, UnigramDistribution> cache;
  std::vector<UnigramDistribution> dists;
  dists.reserve(paths.size());
  for (const auto& raw : paths) {
    std::filesystem::path p(raw);
    if (p.is_relative()) {
      p = std::filesystem::path(table.base_dir) / p;
    }
    const std::string key = p.string();
    auto it = cache.find(key);
    if (it == cache.end()) {
      const std::string one[] = {key};
      auto corpus = load_tokenized(one);
      it = cache.emplace(key, unigram_distribution(corpus)).first;
    }
    dists.push_back(it->second);
  }
  return dists;
}

// Correlation where a constant predictor counts as "undefined" rather
// than an error; degenerate performance still throws.
bool try_pearson(std::span<const double> xs, std::span<const double> ys,
                 Correlation* out) {
  const double first = xs.empty() ? 0.0 : xs.front();
  bool constant = true;
  for (const double x : xs) {
    if (x != first) {
      constant = false;
      break;
    }
  }
  if (constant) return false;
  *out = pearson(xs, ys);
  return true;
}

}  // namespace

bool ObservationTable::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::size_t ObservationTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw UsageError("table has no column named '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<std::string> ObservationTable::text_column(
    const std::string& name) const {
  const std::size_t col = column_index(name);
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[col]);
  return out;
}

std::vector<double> ObservationTable::numeric_column(
    const std::string& name) const {
  const std::size_t col = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(parse_cell(row[col], name));
  return out;
}

ObservationTable table_from_lines(std::span<const std::string> lines,
                                  std::string base_dir) {
  if (lines.empty()) {
    throw IoError("observation table is empty");
  }
  ObservationTable table;
  table.base_dir = std::move(base_dir);
  table.columns = split_tabs(lines.front());
  if (table.columns.size() < 4 || table.columns.front() != "run" ||
      table.columns[1] != "group" || table.columns.back() != "performance") {
    throw IoError(
        "table header must be run, group, one or more predictors, "
        "performance");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto cells = split_tabs(lines[i]);
    if (cells.size() != table.columns.size()) {
      throw IoError("table row " + std::to_string(i + 1) + " has " +
                    std::to_string(cells.size()) + " cells, header has " +
                    std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.rows.empty()) {
    throw DomainError("observation table has no data rows");
  }
  return table;
}

ObservationTable load_table(const std::string& path) {
  const auto lines = read_lines(path);
  std::string dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return table_from_lines(lines, std::move(dir));
}

CorrelationPair correlate_predictor(const ObservationTable& table,
                                    const std::string& predictor) {
  const auto xs = table.numeric_column(predictor);
  const auto ys = table.numeric_column("performance");
  return CorrelationPair{pearson(xs, ys), spearman(xs, ys)};
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(52);
  for (int k = 0; k <= 50; ++k) {
    grid.push_back(static_cast<double>(k) / 10.0);
  }
  grid.push_back(kInfiniteOrder);
  return grid;
}

AlphaGridResult grid_search_alpha(const ObservationTable& table,
                                  const std::string& corpus_column,
                                  std::span<const double> grid,
                                  bool holdout) {
  if (grid.empty()) {
    throw UsageError("alpha grid is empty");
  }
  const auto dists = row_distributions(table, corpus_column);
  const auto perf = table.numeric_column("performance");
  const auto split = split_rows(table, holdout);
  const auto perf_select = take(perf, split.select);

  AlphaGridResult result;
  result.used_holdout = holdout;
  std::size_t best_index = 0;
  bool have_best = false;
  std::vector<double> best_predictor;

  for (const double order : grid) {
    std::vector<double> predictor(dists.size());
    for (std::size_t i = 0; i < dists.size(); ++i) {
      predictor[i] = renyi_efficiency(dists[i], order);
    }
    AlphaGridPoint point;
    point.order = order;
    const auto xs = take(predictor, split.select);
    point.defined = try_pearson(xs, perf_select, &point.pearson);
    if (point.defined) {
      point.spearman = spearman(xs, perf_select);
      const double score = std::abs(point.pearson.coefficient);
      if (!have_best ||
          score > std::abs(result.curve[best_index].pearson.coefficient)) {
        best_index = result.curve.size();
        have_best = true;
        best_predictor = std::move(predictor);
      }
    }
    result.curve.push_back(point);
  }
  if (!have_best) {
    throw DomainError("no grid order yields a defined correlation");
  }
  result.best_order = result.curve[best_index].order;
  result.best = result.curve[best_index].pearson;
  if (holdout) {
    result.holdout = pearson(take(best_predictor, split.holdout),
                             take(perf, split.holdout));
  }
  return result;
}

PercentileGridResult grid_search_percentile(const ObservationTable& table,
                                            const std::string& corpus_column,
                                            bool holdout) {
  const auto dists = row_distributions(table, corpus_column);
  const auto perf = table.numeric_column("performance");
  const auto split = split_rows(table, holdout);
  const auto perf_select = take(perf, split.select);

  // freq[i][k] holds row i's nearest-rank frequency at percentile k/100;
  // a window sum [lo, hi] is then a prefix-sum difference.
  const std::size_t n = dists.size();
  std::vector<std::vector<double>> prefix(n, std::vector<double>(102, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> sorted(dists[i].probs);
    std::sort(sorted.begin(), sorted.end());
    const auto v = static_cast<double>(sorted.size());
    for (int k = 0; k <= 100; ++k) {
      const double point = static_cast<double>(k) / 100.0;
      auto rank = static_cast<std::size_t>(std::ceil(point * v - 1e-9));
      rank = std::clamp<std::size_t>(rank, 1, sorted.size());
      prefix[i][k + 1] = prefix[i][k] + sorted[rank - 1];
    }
  }

  PercentileGridResult result;
  result.used_holdout = holdout;
  result.cells.reserve(101 * 102 / 2);
  std::size_t best_index = 0;
  bool have_best = false;

  for (int lo = 0; lo <= 100; ++lo) {
    for (int hi = lo; hi <= 100; ++hi) {
      std::vector<double> predictor(n);
      for (std::size_t i = 0; i < n; ++i) {
        predictor[i] = prefix[i][hi + 1] - prefix[i][lo];
      }
      PercentileCell cell;
      cell.lo = static_cast<double>(lo) / 100.0;
      cell.hi = static_cast<double>(hi) / 100.0;
      const auto xs = take(predictor, split.select);
      cell.defined = try_pearson(xs, perf_select, &cell.pearson);
      if (cell.defined) {
        const double score = std::abs(cell.pearson.coefficient);
        if (!have_best ||
            score > std::abs(result.cells[best_index].pearson.coefficient)) {
          best_index = result.cells.size();
          have_best = true;
        }
      }
      result.cells.push_back(cell);
    }
  }
  if (!have_best) {
    throw DomainError("no percentile window yields a defined correlation");
  }
  result.best_lo = result.cells[best_index].lo;
  result.best_hi = result.cells[best_index].hi;
  result.best = result.cells[best_index].pearson;
  if (holdout) {
    std::vector<double> predictor(n);
    const int lo = static_cast<int>(std::lround(result.best_lo * 100.0));
    const int hi = static_cast<int>(std::lround(result.best_hi * 100.0));
    for (std::size_t i = 0; i < n; ++i) {
      predictor[i] = prefix[i][hi + 1] - prefix[i][lo];
    }
    result.holdout = pearson(take(predictor, split.holdout),
                             take(perf, split.holdout));
  }
  return result;
}

std::string alpha_curve_tsv(const AlphaGridResult& result) {
  std::ostringstream out;
  out << "alpha\tpearson_r\tpearson_p\tspearman_rho\tspearman_p\n";
  const double nan = std::nan("");
  for (const auto& point : result.curve) {
    out << format_double_10(point.order) << '\t';
    if (point.defined) {
      out << format_double_10(point.pearson.coefficient) << '\t'
          << format_double_10(point.pearson.p_value) << '\t'
          << format_double_10(point.spearman.coefficient) << '\t'
          << format_double_10(point.spearman.p_value) << '\n';
    } else {
      out << format_double_10(nan) << '\t' << format_double_10(nan) << '\t'
          << format_double_10(nan) << '\t' << format_double_10(nan) << '\n';
    }
  }
  return out.str();
}

std::string percentile_matrix_tsv(const PercentileGridResult& result) {
  std::ostringstream out;
  out << "lo\thi\tpearson_r\tpearson_p\n";
  const double nan = std::nan("");
  for (const auto& cell : result.cells) {
    out << format_double_10(cell.lo) << '\t' << format_double_10(cell.hi)
        << '\t';
    if (cell.defined) {
      out << format_double_10(cell.pearson.coefficient) << '\t'
          << format_double_10(cell.pearson.p_value) << '\n';
    } else {
      out << format_double_10(nan) << '\t' << format_double_10(nan) << '\n';
    }
  }
  return out.str();
}

}  // namespace tokeval
