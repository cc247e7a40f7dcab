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

#ifndef TOKEVAL_STATS_HPP_
#define TOKEVAL_STATS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace tokeval {

struct Correlation {
  double coefficient = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;

  double r_squared() const { return coefficient * coefficient; }
};

// Pearson product-moment correlation with the two-sided p-value from the
// exact t distribution with n - 2 degrees of freedom. Needs n >= 3 and
// non-constant inputs of equal length.
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation: Pearson over average ranks (ties share the
// mean of the ranks they cover), same t-based p-value.
Correlation spearman(std::span<const double> xs, std::span<const double> ys);

// Average ranks, 1-based; tied values share the mean rank.
std::vector<double> average_ranks(std::span<const double> values);

// Regularized incomplete beta function I_x(a, b), absolute accuracy
// around 1e-10 over the tested domain.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

}  // namespace tokeval

#endif  // TOKEVAL_STATS_HPP_
