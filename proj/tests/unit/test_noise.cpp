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

#include <gtest/gtest.h>

#include <cmath>

#include "noisypac/noise.hpp"
#include "noisypac/stats.hpp"

namespace noisypac {
namespace {

Sample ramp(std::size_t n) {
  Sample s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = Example{i % 7, i % 2 ? Label::kNeg : Label::kPos};
  return s;
}

// Uncorrupted positions unchanged, and reapplying the ledger reproduces the output.
void expect_ledger_consistent(const Sample& clean, const Corrupted& c) {
  ASSERT_EQ(c.sample.size(), clean.size());
  Sample rebuilt = clean;
  for (std::size_t t = 0; t < c.ledger.budget(); ++t) {
    if (t) EXPECT_LT(c.ledger.corrupted_indices[t - 1], c.ledger.corrupted_indices[t]);
    EXPECT_EQ(c.ledger.replaced[t], clean[c.ledger.corrupted_indices[t]]);
    rebuilt[c.ledger.corrupted_indices[t]] = c.ledger.introduced[t];
  }
  EXPECT_EQ(rebuilt, c.sample);
}

TEST(Malicious, ZeroRateIsClean) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kPos);
  bool called = false;
  OnlineStrategy s = [&](std::span<const Example>, std::size_t, Rng&) {
    called = true;
    return Example{};
  };
  Corrupted out = malicious_corrupt(d, c, 100, 0.0, s, RngHandle{1, 0});
  EXPECT_FALSE(called);
  EXPECT_EQ(out.ledger.budget(), 0u);
  EXPECT_EQ(out.sample.size(), 100u);
  for (const auto& e : out.sample) EXPECT_EQ(e.label, Label::kPos);
}

TEST(Malicious, FullRateConstant) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kNeg);
  Corrupted out = malicious_corrupt(d, c, 50, 1.0, constant_online_strategy({2, Label::kPos}),
                                    RngHandle{2, 0});
  ASSERT_EQ(out.sample.size(), 50u);
  for (const auto& e : out.sample) EXPECT_EQ(e, (Example{2, Label::kPos}));
}

TEST(Malicious, BudgetNearBinomialMean) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kPos);
  Corrupted out = malicious_corrupt(d, c, 10000, 0.25, constant_online_strategy({0, Label::kNeg}),
                                    RngHandle{3, 0});
  EXPECT_NEAR(static_cast<double>(out.ledger.budget()), 2500.0, 4 * std::sqrt(10000 * 0.25 * 0.75));
}

TEST(Malicious, StrategySeesEmittedPrefix) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kPos);
  Sample seen;
  OnlineStrategy s = [&](std::span<const Example> prefix, std::size_t i, Rng&) {
    EXPECT_EQ(prefix.size(), i);
    seen.assign(prefix.begin(), prefix.end());
    return Example{3, Label::kNeg};
  };
  Corrupted out = malicious_corrupt(d, c, 200, 0.3, s, RngHandle{4, 0});
  ASSERT_FALSE(out.ledger.corrupted_indices.empty());
  Sample want(out.sample.begin(),
              out.sample.begin() + static_cast<std::ptrdiff_t>(out.ledger.corrupted_indices.back()));
  EXPECT_EQ(seen, want);
}

TEST(Malicious, RejectsPointsOutsideDomain) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kPos);
  EXPECT_THROW(malicious_corrupt(d, c, 10, 1.0, constant_online_strategy({9, Label::kPos}),
                                 RngHandle{1, 0}),
               ProtocolViolation);
}

TEST(StrongMalicious, ZeroRateAndCopyClean) {
  Sample clean = ramp(100);
  EXPECT_EQ(strong_malicious_corrupt(clean, 0.0, flip_first_strategy(), RngHandle{1, 0}).sample, clean);
  Corrupted copy = strong_malicious_corrupt(clean, 0.5, copy_clean_strategy(), RngHandle{1, 0});
  EXPECT_EQ(copy.sample, clean);
  EXPECT_GT(copy.ledger.budget(), 0u);
}

TEST(StrongMalicious, WritesOnlyInsideZ) {
  Sample clean = ramp(300);
  Corrupted out = strong_malicious_corrupt(clean, 0.2, flip_first_strategy(), RngHandle{5, 0});
  EXPECT_EQ(out.ledger.corrupted_indices, out.ledger.corruptible);
  expect_ledger_consistent(clean, out);
  AdversaryStrategy rogue = [](const AdversaryView& v, Rng&) {
    StrategyOutcome o;
    for (std::size_t i = 0; i < v.clean.size(); ++i) {
      if (!std::binary_search(v.allowed.begin(), v.allowed.end(), i)) {
        o.replacements.push_back({i, v.clean[i]});
        break;
      }
    }
    return o;
  };
  EXPECT_THROW(strong_malicious_corrupt(clean, 0.2, rogue, RngHandle{5, 0}), ProtocolViolation);
}

TEST(StrongMalicious, ContradictoryPairOnOnePoint) {
  Sample clean(2, Example{0, Label::kPos});
  Corrupted out = strong_malicious_corrupt(clean, 1.0, contradictory_pair_strategy(0), RngHandle{1, 0});
  EXPECT_EQ(as_multiset(out.sample), as_multiset(Sample{{0, Label::kPos}, {0, Label::kNeg}}));
}

TEST(Nasty, ZeroRateAndIgnoredBudget) {
  Sample clean = ramp(50);
  EXPECT_EQ(nasty_corrupt(clean, 0.0, flip_first_strategy(), RngHandle{1, 0}).sample, clean);
  Corrupted idle = nasty_corrupt(clean, 0.5, identity_strategy(), RngHandle{1, 0});
  EXPECT_EQ(idle.sample, clean);
  EXPECT_GT(idle.ledger.allowance, 0u);
  EXPECT_EQ(idle.ledger.budget(), 0u);
}

TEST(Nasty, FlipFirstMeanCount) {
  Sample clean = ramp(10000);
  double total = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Corrupted out = nasty_corrupt(clean, 0.1, flip_first_strategy(), RngHandle{6, t});
    total += static_cast<double>(out.ledger.budget());
    if (t < 3) expect_ledger_consistent(clean, out);
  }
  EXPECT_NEAR(total / 200, 1000.0, 4 * std::sqrt(10000 * 0.1 * 0.9 / 200));
}

TEST(Nasty, BudgetLawChiSquare) {
  Sample clean = ramp(100);
  std::vector<double> observed(101, 0.0), probs(101);
  for (std::uint64_t t = 0; t < 2000; ++t) {
    observed[nasty_corrupt(clean, 0.2, flip_first_strategy(), RngHandle{7, t}).ledger.allowance] += 1;
  }
  for (std::size_t k = 0; k <= 100; ++k) probs[k] = stats::binomial_pmf(100, k, 0.2);
  EXPECT_TRUE(stats::chi_square_gof(observed, probs).passes(1e-3));
}

TEST(Nasty, ProtocolViolations) {
  Sample clean = ramp(10);
  StrategyOutcome dup;
  dup.replacements = {{1, {0, Label::kPos}}, {1, {0, Label::kNeg}}};
  EXPECT_THROW(apply_replacements(clean, dup, 5, {}), ProtocolViolation);
  StrategyOutcome far;
  far.replacements = {{10, {0, Label::kPos}}};
  EXPECT_THROW(apply_replacements(clean, far, 5, {}), ProtocolViolation);
  StrategyOutcome many;
  many.replacements = {{1, {0, Label::kPos}}, {2, {0, Label::kPos}}};
  EXPECT_THROW(apply_replacements(clean, many, 1, {}), ProtocolViolation);
}

TEST(FixedRate, SpecExamples) {
  EXPECT_EQ(fixed_rate_nasty_corrupt(ramp(9), 0.1, identity_strategy()).ledger.budget(), 0u);
  EXPECT_EQ(fixed_rate_nasty_corrupt(ramp(4), 0.5, flip_first_strategy()).ledger.budget(), 2u);
  Corrupted out = fixed_rate_nasty_corrupt(ramp(10), 0.3, flip_first_strategy());
  EXPECT_EQ(out.ledger.corrupted_indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(fixed_rate_nasty_corrupt(ramp(10), 0.3, identity_strategy()), ProtocolViolation);
}

TEST(Huber, ExtremeRates) {
  auto d = DiscreteDistribution::uniform(4);
  auto c = Concept::constant(4, Label::kPos);
  auto q = DiscreteDistribution::point_mass(8, 5);
  for (const auto& e : huber_sample(d, c, 1.0, q, 100, RngHandle{1, 0})) EXPECT_EQ(e, (Example{2, Label::kNeg}));
  EXPECT_EQ(huber_sample(d, c, 0.0, q, 100, RngHandle{1, 0}).size(), 100u);
  for (const auto& e : huber_sample(d, c, 0.0, q, 100, RngHandle{1, 0})) EXPECT_EQ(e.label, Label::kPos);
}

TEST(Huber, MarginalMatchesMixture) {
  DiscreteDistribution d({0.1, 0.2, 0.3, 0.4});
  auto c = Concept::from_table({Label::kPos, Label::kNeg, Label::kPos, Label::kPos});
  // Outlier law is the point mass on (0, -c(0)).
  auto q = DiscreteDistribution::point_mass(8, labeled_index(Example{0, Label::kNeg}));
  const double eta = 0.2;
  const double p_pair = eta;  // the clean law never emits (0, -1)
  Sample s = huber_sample(d, c, eta, q, 10000, RngHandle{8, 0});
  std::size_t hits = 0;
  for (const auto& e : s) hits += e == Example{0, Label::kNeg};
  EXPECT_NEAR(static_cast<double>(hits), 10000 * p_pair, 4 * std::sqrt(10000 * p_pair * (1 - p_pair)));
  std::vector<double> obs(8, 0.0), probs(8, 0.0);
  auto dc = labeled_distribution(d, c);
  for (std::size_t j = 0; j < 8; ++j) probs[j] = (1 - eta) * dc.weight(j) + eta * q.weight(j);
  for (const auto& e : s) obs[labeled_index(e)] += 1;
  EXPECT_TRUE(stats::chi_square_gof(obs, probs).passes(1e-3));
}

TEST(TotalVariation, SpecExamples) {
  DiscreteDistribution p({0.5, 0.5}), q({0.75, 0.25});
  EXPECT_DOUBLE_EQ(tv_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.25);
  EXPECT_DOUBLE_EQ(tv_distance(DiscreteDistribution::point_mass(2, 0),
                               DiscreteDistribution::point_mass(2, 1)),
                   1.0);
}

TEST(TotalVariation, MetricOnInstances) {
  std::vector<DiscreteDistribution> ds = {DiscreteDistribution({0.1, 0.2, 0.7}),
                                          DiscreteDistribution({0.3, 0.3, 0.4}),
                                          DiscreteDistribution({0.6, 0.0, 0.4}),
                                          DiscreteDistribution::uniform(3)};
  for (const auto& a : ds) {
    for (const auto& b : ds) {
      EXPECT_EQ(tv_distance(a, b), tv_distance(b, a));
      for (const auto& c : ds) EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-15);
    }
  }
}

TEST(TvCorrupt, SpecExamples) {
  DiscreteDistribution dc({0.5, 0.5, 0.0});
  EXPECT_NO_THROW(tv_corrupt(dc, 0.0, dc));
  auto moved = remove_then_add(dc, {{0, 0.25}}, {{2, 0.25}});
  EXPECT_NO_THROW(tv_corrupt(dc, 0.25, moved));
  EXPECT_THROW(tv_corrupt(dc, 0.2, moved), TvBudgetExceeded);
  EXPECT_NO_THROW(tv_corrupt(DiscreteDistribution::point_mass(2, 0), 1.0,
                             DiscreteDistribution::point_mass(2, 1)));
  EXPECT_THROW(remove_then_add(dc, {{2, 0.1}}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace noisypac
