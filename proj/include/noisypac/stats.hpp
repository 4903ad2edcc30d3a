// Copyright 2026 The noisypac Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace noisypac::stats {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct ChiSquare {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  bool passes(double significance) const { return p_value >= significance; }
};

double binary_entropy(double p);

double binomial_pmf(std::uint64_t n, std::uint64_t k, double p);

// Clopper-Pearson interval for a binomial proportion.
Interval binomial_ci(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

// Two-sided normal quantile, e.g. 2.5758 for 0.99.
double normal_quantile_two_sided(double confidence);

double chi_square_survival(double statistic, double dof);

// Goodness of fit of observed counts against cell probabilities. Adjacent
// cells are pooled left to right until each pooled cell expects at least
// min_expected observations.
ChiSquare chi_square_gof(const std::vector<double>& observed,
                         const std::vector<double>& probabilities, double min_expected = 5.0);

// Homogeneity test for two count vectors over the same cells. Cells are
// pooled the same way, using the smaller expected count of the two rows.
ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                                double min_expected = 5.0);

// Two-sided monobit test p-value for ones among n fair bits.
double monobit_p_value(std::uint64_t ones, std::uint64_t n);

double mean(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

}  // namespace noisypac::stats
