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

#ifndef TOKEVAL_METRICS_HPP_
#define TOKEVAL_METRICS_HPP_

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"

namespace tokeval {

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

// Shannon entropy -sum p log_b p.
double shannon_entropy(const UnigramDistribution& dist, double base = 2.0);

// Entropy of the given order:
//   order 0    -> log_b V
//   order 1    -> Shannon entropy
//   order inf  -> -log_b max p
//   otherwise  -> log_b(sum p^order) / (1 - order)
// Negative orders are rejected.
double renyi_entropy(const UnigramDistribution& dist, double order,
                     double base = 2.0);

// Entropy divided by log V. Base-free; requires at least two types.
double shannon_efficiency(const UnigramDistribution& dist);
double renyi_efficiency(const UnigramDistribution& dist, double order);

// Sum of type probabilities sampled at percentile ranks lo, lo+0.01, ...
// up to hi inclusive, over the ascending-sorted probability vector using
// the nearest-rank rule (rank = ceil(n * V), clamped to [1, V]).
double percentile_freq(const UnigramDistribution& dist, double lo = 0.03,
                       double hi = 0.83);

// Mean tokens per text.
double sequence_len(const TokenizedCorpus& corpus);

// Total tokens times Shannon entropy in base 2.
double bits(const TokenizedCorpus& corpus);

// Named-metric dispatch used by the CLI and the C interface.
struct MetricParams {
  double power = 2.5;        // entropy order for renyi_* metrics
  double perc_start = 0.03;  // percentile_freq window start
  double perc_end = 0.83;    // percentile_freq window end
  double base = 2.0;         // log base for the entropy metrics
};

double compute_metric(const TokenizedCorpus& corpus, std::string_view name,
                      const MetricParams& params = {});

const std::vector<std::string>& metric_names();

}  // namespace tokeval

#endif  // TOKEVAL_METRICS_HPP_
