// Copyright 2026 The pdcbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pdcbench::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // sample variance, n - 1
double standard_error(std::span<const double> xs);
double median(std::span<const double> xs);

/// Ranks starting at 1; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> xs);
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution and the usual small-sample correction of the effective n.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Upper tail of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_tail(double lambda);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts to expected counts. Cells whose
/// expected count is below `min_expected` are pooled into their neighbour.
ChiSquareResult chi_square_gof(std::span<const double> observed, std::span<const double> expected,
                               double min_expected = 5.0);

/// Two-sided Clopper-Pearson interval for a binomial proportion.
std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t trials, double confidence);

/// Central interval [lo, hi] of success counts for Binomial(n, p) holding at
/// least `confidence` of the mass.
std::pair<std::size_t, std::size_t> binomial_count_interval(std::size_t n, double p, double confidence);

/// One-sided binomial tail P(X >= k) for X ~ Binomial(n, p).
double binomial_upper_tail(std::size_t k, std::size_t n, double p);

}  // namespace pdcbench::stats
