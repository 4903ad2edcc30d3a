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

#include "noisypac/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "noisypac/stats.hpp"

namespace noisypac {

Learner::Learner(std::string name, std::size_t sample_size, TrainFn train)
    : name_(std::move(name)), sample_size_(sample_size), train_(std::move(train)) {
  if (!train_) throw std::invalid_argument("learner needs a training function");
}

Hypothesis Learner::operator()(const Sample& s, RngHandle rng) const {
  if (s.size() < sample_size_) throw std::invalid_argument("learner given too few examples");
  if (s.size() > sample_size_) {
    return train_(subsample_filter(s, sample_size_, rng.child(0x5ab)), rng);
  }
  return train_(s, rng);
}

// ---------------------------------------------------------------------------
// ICE

std::vector<std::size_t> ice_survivors(const Sample& s) {
  std::unordered_map<Point, long> balance;
  balance.reserve(s.size());
  for (const auto& e : s) balance[e.point] += to_int(e.label);
  std::unordered_map<Point, long> kept;
  kept.reserve(balance.size());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    long b = balance[s[i].point];
    if (b == 0 || (b > 0) != (s[i].label == Label::kPos)) continue;
    long& k = kept[s[i].point];
    if (k < std::abs(b)) {
      ++k;
      out.push_back(i);
    }
  }
  return out;
}

Sample ice_filter(const Sample& s) {
  Sample out;
  for (std::size_t i : ice_survivors(s)) out.push_back(s[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Subsampling and splitting

std::vector<std::size_t> uniform_permutation(std::size_t m, Rng& rng) {
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

Sample subsample_filter(const Sample& s, std::size_t n, RngHandle rng) {
  if (n > s.size()) throw std::invalid_argument("subsample_filter: n exceeds sample size");
  Rng gen(rng);
  // Partial Fisher-Yates: the first n slots are a uniform ordered n-subset.
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  Sample out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(gen.below(s.size() - i));
    std::swap(idx[i], idx[j]);
    out.push_back(s[idx[i]]);
  }
  return out;
}

GroupSplit split_into_groups(const Sample& s, std::size_t n, std::size_t k, std::size_t n_test,
                             Rng& rng) {
  if (s.size() != n * k + n_test) throw std::invalid_argument("sample length is not n*k + n_test");
  GroupSplit g;
  g.order = uniform_permutation(s.size(), rng);
  g.groups.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    g.groups[i].reserve(n);
    for (std::size_t t = 0; t < n; ++t) g.groups[i].push_back(s[g.order[i * n + t]]);
  }
  for (std::size_t t = n * k; t < s.size(); ++t) g.test.push_back(s[g.order[t]]);
  return g;
}

// ---------------------------------------------------------------------------
// Amplify / BadAmplify

AmplifyParams AmplifyParams::derive(double eps_additional, double delta, double c_k) {
  AmplifyParams p;
  p.eps_additional = eps_additional;
  p.delta = delta;
  p.validate();
  if (!(c_k > 0.0)) throw std::invalid_argument("C_k must be positive");
  p.k = static_cast<std::size_t>(
      std::ceil(c_k * std::log(1.0 / delta) / (eps_additional * eps_additional)));
  p.k = std::max<std::size_t>(p.k, 1);
  return p;
}

void AmplifyParams::validate() const {
  if (!(eps_additional > 0.0)) throw std::invalid_argument("eps_additional must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

Hypothesis amplify(const Learner& a, const AmplifyParams& params, const Sample& s_big,
                   RngHandle rng) {
  if (params.k == 0) throw std::invalid_argument("amplify needs k >= 1");
  const std::size_t n = a.sample_size();
  if (s_big.size() != n * params.k) throw std::invalid_argument("amplify: |S_big| != n*k");
  Rng perm_rng(rng.child(0));
  GroupSplit g = split_into_groups(s_big, n, params.k, 0, perm_rng);
  std::vector<Hypothesis> hs;
  hs.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) hs.push_back(a(g.groups[i], rng.child(1 + i)));
  return Hypothesis::mixture(std::move(hs));
}

BadAmplifyResult bad_amplify(const Learner& a, std::size_t k, std::size_t n_test,
                             const Sample& s_big, RngHandle rng) {
  if (k == 0) throw std::invalid_argument("bad_amplify needs k >= 1");
  const std::size_t n = a.sample_size();
  if (s_big.size() != n * k + n_test) {
    throw std::invalid_argument("bad_amplify: |S_big| != n*k + n_test");
  }
  Rng perm_rng(rng.child(0));
  BadAmplifyResult r{Hypothesis::constant(Label::kPos), 0, {}, {}, {}};
  r.split = split_into_groups(s_big, n, k, n_test, perm_rng);
  for (std::size_t i = 0; i < k; ++i) r.candidates.push_back(a(r.split.groups[i], rng.child(1 + i)));
  std::vector<std::size_t> best;
  if (n_test == 0) {
    best.resize(k);
    std::iota(best.begin(), best.end(), 0);
  } else {
    PointTally tally = PointTally::of(r.split.test);
    for (const auto& h : r.candidates) r.test_disagreements.push_back(disagreements(h, tally));
    double lo = *std::min_element(r.test_disagreements.begin(), r.test_disagreements.end());
    for (std::size_t i = 0; i < k; ++i) {
      if (r.test_disagreements[i] == lo) best.push_back(i);
    }
  }
  Rng tie_rng(rng.child(0x7e));
  r.index = best[static_cast<std::size_t>(tie_rng.below(best.size()))];
  r.chosen = r.candidates[r.index];
  return r;
}

// ---------------------------------------------------------------------------
// Selection and calculators

std::size_t argmin_lowest_index(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmin of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best]) best = i;
  }
  return best;
}

Selection select_best_hypothesis(const std::vector<Hypothesis>& hyps, const Sample& s_test) {
  if (hyps.empty()) throw std::invalid_argument("select_best_hypothesis: no hypotheses");
  if (s_test.empty()) throw std::invalid_argument("select_best_hypothesis: empty test sample");
  PointTally tally = PointTally::of(s_test);
  Selection sel{0, hyps.front(), {}};
  sel.disagreements.reserve(hyps.size());
  for (const auto& h : hyps) sel.disagreements.push_back(disagreements(h, tally));
  sel.index = argmin_lowest_index(sel.disagreements);
  sel.hypothesis = hyps[sel.index];
  return sel;
}

std::uint64_t bv_sample_size(std::uint64_t n, std::uint64_t domain_size, double param, double c) {
  if (!(param > 0.0)) throw std::invalid_argument("bv_sample_size: param must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("bv_sample_size: C must be positive");
  if (domain_size == 0) throw std::invalid_argument("bv_sample_size: empty domain");
  long double nn = static_cast<long double>(n);
  long double lg = std::log2(2.0L * static_cast<long double>(domain_size));
  long double p2 = static_cast<long double>(param) * param;
  long double m = static_cast<long double>(c) * nn * nn * nn * nn * lg * lg / (p2 * p2);
  // Trim representation noise before the ceiling so exact products stay exact.
  long double r = std::round(m);
  if (std::abs(m - r) <= 1e-9L * std::max(1.0L, r)) m = r;
  return static_cast<std::uint64_t>(std::ceil(m));
}

ErrorEstimate expected_error_estimate(const Learner& a, const DiscreteDistribution& d,
                                      const Concept& c, const NoiseProcess& noise,
                                      std::size_t trials, RngHandle rng) {
  if (trials == 0) throw std::invalid_argument("expected_error_estimate needs trials >= 1");
  std::vector<double> errs;
  errs.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RngHandle trial = rng.child(t);
    Sample clean = draw_clean_sample(d, c, a.sample_size(), trial.child(0));
    Sample corrupted = noise ? noise(clean, trial.child(1)) : clean;
    errs.push_back(error_rate(a(corrupted, trial.child(2)), c, d));
  }
  ErrorEstimate e;
  e.trials = trials;
  e.mean = stats::mean(errs);
  if (trials >= 2) {
    e.halfwidth_defined = true;
    e.halfwidth = stats::normal_quantile_two_sided(0.99) * stats::sample_stddev(errs) /
                  std::sqrt(static_cast<double>(trials));
  } else {
    e.halfwidth = std::nan("");
  }
  return e;
}

}  // namespace noisypac
