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

#ifndef TOKEVAL_ANALYSIS_HPP_
#define TOKEVAL_ANALYSIS_HPP_

#include <span>
#include <string>
#include <vector>

#include "stats.hpp"

namespace tokeval {

// Tab-separated observation table. The header is fixed at the edges:
// "run", "group", one or more predictor columns, then "performance".
// Cells are kept as text; numeric columns are parsed on demand.
struct ObservationTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string base_dir;  // directory of the source file, for relative paths

  std::size_t num_rows() const { return rows.size(); }
  bool has_column(const std::string& name) const;
  std::size_t column_index(const std::string& name) const;
  std::vector<std::string> text_column(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

ObservationTable load_table(const std::string& path);
ObservationTable table_from_lines(std::span<const std::string> lines,
                                  std::string base_dir = ".");

// Pearson and Spearman of one predictor column against performance.
struct CorrelationPair {
  Correlation pearson;
  Correlation spearman;
};

CorrelationPair correlate_predictor(const ObservationTable& table,
                                    const std::string& predictor);

// One evaluated grid point. `defined` is false when the correlation does
// not exist at this point (constant predictor across the rows); such
// points are excluded from the argmax and exported with nan values.
struct AlphaGridPoint {
  double order = 0.0;
  bool defined = false;
  Correlation pearson;
  Correlation spearman;
};

struct AlphaGridResult {
  std::vector<AlphaGridPoint> curve;
  double best_order = 0.0;
  Correlation best;       // Pearson at best_order on the selection rows
  bool used_holdout = false;
  Correlation holdout;    // Pearson at best_order on the held-out rows
};

// 0, 0.1, 0.2, ..., 5.0, then infinity.
std::vector<double> default_alpha_grid();

// Scores every row's corpus at each grid order and correlates the
// resulting efficiency with the performance column. `corpus_column`
// names the table column holding per-run tokenized-text paths, resolved
// relative to the table's directory. With `holdout` the rows are split
// by run-id parity: the argmax is chosen on the even half and the
// correlation at that order is re-measured on the odd half.
AlphaGridResult grid_search_alpha(const ObservationTable& table,
                                  const std::string& corpus_column,
                                  std::span<const double> grid,
                                  bool holdout = false);

struct PercentileCell {
  double lo = 0.0;
  double hi = 0.0;
  bool defined = false;
  Correlation pearson;
};

struct PercentileGridResult {
  std::vector<PercentileCell> cells;  // lo-major, upper triangle only
  double best_lo = 0.0;
  double best_hi = 0.0;
  Correlation best;
  bool used_holdout = false;
  Correlation holdout;
};

// Exhaustive search over percentile windows [lo, hi] on the 1%-step
// grid, correlating the windowed frequency sum with performance.
PercentileGridResult grid_search_percentile(const ObservationTable& table,
                                            const std::string& corpus_column,
                                            bool holdout = false);

// Plot-ready TSV renderings, 10 significant digits, header row first.
std::string alpha_curve_tsv(const AlphaGridResult& result);
std::string percentile_matrix_tsv(const PercentileGridResult& result);

}  // namespace tokeval

#endif  // TOKEVAL_ANALYSIS_HPP_
