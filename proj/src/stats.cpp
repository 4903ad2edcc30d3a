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

#include "noisypac/stats.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace noisypac::stats {

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binomial_pmf(std::uint64_t n, std::uint64_t k, double p) {
  if (k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::pdf(dist, static_cast<double>(k));
}

Interval binomial_ci(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("binomial_ci with zero trials");
  if (successes > trials) throw std::invalid_argument("binomial_ci: successes exceed trials");
  double alpha = 1.0 - confidence;
  auto k = static_cast<double>(successes);
  auto n = static_cast<double>(trials);
  Interval ci;
  ci.lo = successes == 0 ? 0.0
                         : boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1),
                                                 alpha / 2);
  ci.hi = successes == trials
              ? 1.0
              : boost::math::quantile(boost::math::beta_distribution<double>(k + 1, n - k),
                                      1 - alpha / 2);
  return ci;
}

double normal_quantile_two_sided(double confidence) {
  boost::math::normal_distribution<double> z;
  return boost::math::quantile(z, 0.5 + confidence / 2.0);
}

double chi_square_survival(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  if (statistic <= 0.0) return 1.0;
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

namespace {

// Groups consecutive cells until each group reaches the expected-count floor.
std::vector<std::vector<std::size_t>> pool_cells(const std::vector<double>& expected,
                                                 double min_expected) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> current;
  double acc = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    current.push_back(i);
    acc += expected[i];
    if (acc >= min_expected) {
      groups.push_back(current);
      current.clear();
      acc = 0.0;
    }
  }
  if (!current.empty()) {
    if (groups.empty()) {
      groups.push_back(current);
    } else {
      groups.back().insert(groups.back().end(), current.begin(), current.end());
    }
  }
  return groups;
}

}  // namespace

ChiSquare chi_square_gof(const std::vector<double>& observed,
                         const std::vector<double>& probabilities, double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  std::vector<double> expected(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    expected[i] = total * probabilities[i] / psum;
  }
  auto groups = pool_cells(expected, min_expected);
  ChiSquare r;
  for (const auto& g : groups) {
    double o = 0.0, e = 0.0;
    for (std::size_t i : g) {
      o += observed[i];
      e += expected[i];
    }
    if (e > 0.0) {
      r.statistic += (o - e) * (o - e) / e;
    } else if (o > 0.0) {
      r.statistic = INFINITY;
    }
  }
  r.dof = static_cast<double>(groups.size()) - 1.0;
  r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_survival(r.statistic, r.dof);
  return r;
}

ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                                double min_expected) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  }
  double na = std::accumulate(a.begin(), a.end(), 0.0);
  double nb = std::accumulate(b.begin(), b.end(), 0.0);
  if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("chi_square_two_sample: empty row");
  double n = na + nb;
  std::vector<double> floor_expected(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double col = a[i] + b[i];
    floor_expected[i] = std::min(na, nb) * col / n;
  }
  auto groups = pool_cells(floor_expected, min_expected);
  ChiSquare r;
  std::size_t used = 0;
  for (const auto& g : groups) {
    double oa = 0.0, ob = 0.0;
    for (std::size_t i : g) {
      oa += a[i];
      ob += b[i];
    }
    double col = oa + ob;
    if (col <= 0.0) continue;
    double ea = na * col / n;
    double eb = nb * col / n;
    r.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    ++used;
  }
  r.dof = static_cast<double>(used) - 1.0;
  r.p_value = chi_square_survival(r.statistic, r.dof);
  return r;
}

double monobit_p_value(std::uint64_t ones, std::uint64_t n) {
  if (n == 0) return 1.0;
  double s = std::abs(2.0 * static_cast<double>(ones) - static_cast<double>(n)) /
             std::sqrt(static_cast<double>(n));
  return std::erfc(s / std::sqrt(2.0));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace noisypac::stats
