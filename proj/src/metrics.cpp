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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "text.hpp"

namespace tokeval {

namespace {

void check_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw UsageError("log base must be a finite value > 1");
  }
}

// log_base(x). Base 2 goes through log2 so that base-2 entropies come
// out of a single rounding rather than a quotient of two.
double log_base(double x, double base) {
  if (base == 2.0) return std::log2(x);
  return std::log(x) / std::log(base);
}

// ln(sum exp(x_i)), max-shifted.
double log_sum_exp(const std::vector<double>& xs) {
  double m = xs[0];
  for (double x : xs) m = std::max(m, x);
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

}  // namespace

double shannon_entropy(const UnigramDistribution& dist, double base) {
  check_base(base);
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  double h = 0.0;
  for (double p : dist.probs) h -= p * log_base(p, base);
  return h;
}

double renyi_entropy(const UnigramDistribution& dist, double order,
                     double base) {
  check_base(base);
  if (std::isnan(order) || order < 0.0) {
    throw UsageError("entropy order must be >= 0 or infinite");
  }
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  if (order == 0.0) {
    return log_base(static_cast<double>(dist.size()), base);
  }
  if (std::isinf(order)) {
    double pmax = *std::max_element(dist.probs.begin(), dist.probs.end());
    return -log_base(pmax, base);
  }
  if (order == 1.0) {
    return shannon_entropy(dist, base);
  }
  double sum = 0.0;
  for (double p : dist.probs) sum += std::pow(p, order);
  if (sum > 0.0 && std::isfinite(sum)) {
    return log_base(sum, base) / (1.0 - order);
  }
  // The direct power sum under- or overflowed; evaluate its log shifted.
  std::vector<double> scaled;
  scaled.reserve(dist.size());
  for (double p : dist.probs) scaled.push_back(order * std::log(p));
  return log_sum_exp(scaled) / (1.0 - order) / std::log(base);
}

double shannon_efficiency(const UnigramDistribution& dist) {
  return renyi_efficiency(dist, 1.0);
}

double renyi_efficiency(const UnigramDistribution& dist, double order) {
  if (dist.size() < 2) {
    throw DomainError(
        "efficiency is undefined for a vocabulary of fewer than two types");
  }
  return renyi_entropy(dist, order, 2.0) /
         std::log2(static_cast<double>(dist.size()));
}

double percentile_freq(const UnigramDistribution& dist, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi <= 1.0) || !(lo <= hi)) {
    throw UsageError("percentile window must satisfy 0 <= lo <= hi <= 1");
  }
  if (dist.size() == 0) {
    throw DomainError("empty distribution");
  }
  std::vector<double> sorted(dist.probs);
  std::sort(sorted.begin(), sorted.end());
  const auto v = static_cast<double>(sorted.size());
  double total = 0.0;
  for (int i = 0;; ++i) {
    const double n = lo + 0.01 * i;
    if (n > hi + 1e-9) {
      break;
    }
    auto rank = static_cast<long>(std::ceil(n * v - 1e-9));
    rank = std::clamp(rank, 1L, static_cast<long>(sorted.size()));
    total += sorted[static_cast<std::size_t>(rank - 1)];
  }
  return total;
}

double sequence_len(const TokenizedCorpus& corpus) {
  return expected_length(corpus);
}

double bits(const TokenizedCorpus& corpus) {
  auto dist = unigram_distribution(corpus);
  return static_cast<double>(corpus.num_tokens()) * shannon_entropy(dist, 2.0);
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "renyi_efficiency", "renyi_entropy",   "shannon_efficiency",
      "shannon_entropy",  "percentile_freq", "bits",
      "sequence_len",
  };
  return names;
}

double compute_metric(const TokenizedCorpus& corpus, std::string_view name,
                      const MetricParams& params) {
  if (name == "sequence_len") {
    return sequence_len(corpus);
  }
  if (name == "bits") {
    return bits(corpus);
  }
  auto dist = unigram_distribution(corpus);
  if (name == "renyi_efficiency") {
    return renyi_efficiency(dist, params.power);
  }
  if (name == "renyi_entropy") {
    return renyi_entropy(dist, params.power, params.base);
  }
  if (name == "shannon_efficiency") {
    return shannon_efficiency(dist);
  }
  if (name == "shannon_entropy") {
    return shannon_entropy(dist, params.base);
  }
  if (name == "percentile_freq") {
    return percentile_freq(dist, params.perc_start, params.perc_end);
  }
  std::string known;
  for (const auto& metric : metric_names()) {
    known += known.empty() ? metric : " " + metric;
  }
  throw UsageError("unknown metric '" + std::string(name) + "' (known: " +
                   known + ")");
}

}  // namespace tokeval
