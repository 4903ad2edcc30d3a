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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "noisypac/core.hpp"

namespace noisypac {

class Learner {
 public:
  using TrainFn = std::function<Hypothesis(const Sample&, RngHandle)>;

  Learner(std::string name, std::size_t sample_size, TrainFn train);

  const std::string& name() const { return name_; }
  std::size_t sample_size() const { return sample_size_; }

  // Larger inputs are first reduced with subsample_filter; smaller inputs
  // are rejected.
  Hypothesis operator()(const Sample& s, RngHandle rng) const;

 private:
  std::string name_;
  std::size_t sample_size_;
  TrainFn train_;
};

Sample ice_filter(const Sample& s);
// Positions of s that survive ice_filter, ascending.
std::vector<std::size_t> ice_survivors(const Sample& s);

Sample subsample_filter(const Sample& s, std::size_t n, RngHandle rng);

std::vector<std::size_t> uniform_permutation(std::size_t m, Rng& rng);

struct GroupSplit {
  std::vector<std::size_t> order;  // order[i] = source index of permuted position i
  std::vector<Sample> groups;
  Sample test;
};

// Permutes s and cuts it into k groups of n followed by a test set.
GroupSplit split_into_groups(const Sample& s, std::size_t n, std::size_t k, std::size_t n_test,
                             Rng& rng);

struct AmplifyParams {
  std::size_t k = 1;
  double eps_additional = 0.1;
  double delta = 0.1;

  // k = ceil(c_k ln(1/delta) / eps_additional^2).
  static AmplifyParams derive(double eps_additional, double delta, double c_k = 1.0);
  void validate() const;
};

Hypothesis amplify(const Learner& a, const AmplifyParams& params, const Sample& s_big,
                   RngHandle rng);

struct BadAmplifyResult {
  Hypothesis chosen;
  std::size_t index = 0;
  std::vector<Hypothesis> candidates;
  std::vector<double> test_disagreements;
  GroupSplit split;
};

BadAmplifyResult bad_amplify(const Learner& a, std::size_t k, std::size_t n_test,
                             const Sample& s_big, RngHandle rng);

struct Selection {
  std::size_t index = 0;
  Hypothesis hypothesis;
  std::vector<double> disagreements;
};

// Lowest disagreement count on s_test; ties go to the lowest index.
Selection select_best_hypothesis(const std::vector<Hypothesis>& hyps, const Sample& s_test);
std::size_t argmin_lowest_index(std::span<const double> scores);

std::uint64_t bv_sample_size(std::uint64_t n, std::uint64_t domain_size, double param, double c);

struct ErrorEstimate {
  double mean = 0.0;
  double halfwidth = 0.0;  // 99% normal approximation
  bool halfwidth_defined = false;
  std::size_t trials = 0;
};

using NoiseProcess = std::function<Sample(const Sample& clean, RngHandle rng)>;

ErrorEstimate expected_error_estimate(const Learner& a, const DiscreteDistribution& d,
                                      const Concept& c, const NoiseProcess& noise,
                                      std::size_t trials, RngHandle rng);

}  // namespace noisypac
