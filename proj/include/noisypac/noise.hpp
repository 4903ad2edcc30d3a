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
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "noisypac/core.hpp"

namespace noisypac {

class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class TvBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Replacement {
  std::size_t index = 0;
  Example example;
};

struct StrategyOutcome {
  std::vector<Replacement> replacements;
  // Set when the scripted attack needed more budget than it was given.
  bool exhausted = false;
};

// What a whole-sample adversary sees. For nasty noise `allowed` is empty and
// any index may be chosen; for strong malicious noise it lists Z.
struct AdversaryView {
  const Sample& clean;
  std::size_t budget = 0;
  std::span<const std::size_t> allowed;
};

// Strategies capture the target concept and base distribution they need.
using AdversaryStrategy = std::function<StrategyOutcome(const AdversaryView&, Rng&)>;

// Malicious noise: called only for heads positions and shown the emitted
// prefix S[0..i).
using OnlineStrategy = std::function<Example(std::span<const Example> prefix, std::size_t i,
                                             Rng& rng)>;

struct CorruptionLedger {
  std::vector<std::size_t> corrupted_indices;  // ascending
  Sample replaced;
  Sample introduced;
  std::size_t allowance = 0;               // drawn budget: z, |Z|, or floor(eta n)
  std::vector<std::size_t> corruptible;    // Z for malicious and strong malicious
  bool exhausted = false;

  std::size_t budget() const { return corrupted_indices.size(); }
};

struct Corrupted {
  Sample sample;
  CorruptionLedger ledger;
};

void check_rate(double eta);

Corrupted malicious_corrupt(const DiscreteDistribution& d, const Concept& c, std::size_t n,
                            double eta, const OnlineStrategy& strategy, RngHandle rng);
Corrupted strong_malicious_corrupt(const Sample& clean, double eta,
                                   const AdversaryStrategy& strategy, RngHandle rng);
Corrupted nasty_corrupt(const Sample& clean, double eta, const AdversaryStrategy& strategy,
                        RngHandle rng);
Corrupted fixed_rate_nasty_corrupt(const Sample& clean, double eta,
                                   const AdversaryStrategy& strategy, RngHandle rng = {});

// Applies validated replacements to a copy of the clean sample.
Corrupted apply_replacements(const Sample& clean, const StrategyOutcome& outcome,
                             std::size_t allowance, std::span<const std::size_t> allowed);

// Dc over the labeled index space of size 2|X|.
DiscreteDistribution labeled_distribution(const DiscreteDistribution& d, const Concept& c);

Sample huber_sample(const DiscreteDistribution& d, const Concept& c, double eta,
                    const DiscreteDistribution& outliers, std::size_t n, RngHandle rng);

double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

const DiscreteDistribution& tv_corrupt(const DiscreteDistribution& dc, double eta,
                                       const DiscreteDistribution& dprime);

// Removes the listed masses from base, then adds the listed masses.
DiscreteDistribution remove_then_add(const DiscreteDistribution& base,
                                     const std::vector<std::pair<std::size_t, double>>& removals,
                                     const std::vector<std::pair<std::size_t, double>>& additions);

// Generic strategies.
AdversaryStrategy identity_strategy();
// Flips the labels of the first budget positions it may touch.
AdversaryStrategy flip_first_strategy();
// Writes a fixed example into the first budget positions it may touch.
AdversaryStrategy constant_strategy(Example e);
// Writes uniformly random points with uniformly random labels.
AdversaryStrategy random_outlier_strategy(std::size_t domain_size);
// Rewrites each touched position with its clean value.
AdversaryStrategy copy_clean_strategy();
// Fills touched positions with contradictory pairs at one point.
AdversaryStrategy contradictory_pair_strategy(Point x);

// Online strategy drawing each emitted example from an outlier law over the
// labeled index space; its output law is that distribution.
OnlineStrategy outlier_draw_strategy(DiscreteDistribution outliers);
OnlineStrategy constant_online_strategy(Example e);

}  // namespace noisypac
