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

#include "noisypac/icesep.hpp"
#include "noisypac/learn.hpp"

namespace noisypac {
namespace {

std::shared_ptr<const IceSepInstance> default_instance() {
  static auto inst = IceSepInstance::build(IceSepParams{}, RngHandle{21, 0});
  return inst;
}

IceConcept random_concept(const std::shared_ptr<const IceSepInstance>& inst, RngHandle h) {
  Rng r(h);
  return IceConcept::make(inst, PrfKey::random(inst->params().d, r));
}

Sample clean_sample(const IceConcept& c, std::size_t n, RngHandle rng) {
  const auto& lay = c.instance->params().layout;
  return draw_clean_sample(DiscreteDistribution::uniform(lay.domain_size()), c.as_concept(), n,
                           rng);
}

Sample repeat(Example e, std::size_t k) { return Sample(k, e); }

TEST(IceSepParams, Defaults) {
  IceSepParams p;
  p.finalize();
  EXPECT_EQ(p.layout.block_size, 3u);
  EXPECT_EQ(p.n, 166043u);
  EXPECT_DOUBLE_EQ(p.tau(), 0.025);
  EXPECT_EQ(p.radius(), 9u);
  EXPECT_NEAR(p.R(), 459.53, 0.01);
  EXPECT_GE(p.n, static_cast<std::size_t>(std::ceil(50.0 * p.w / p.eta)));
  EXPECT_LE(p.Delta(), p.R() + 1e-9);
}

TEST(IceSepParams, ValidateRejects) {
  auto bad = [](auto mutate) {
    IceSepParams p;
    mutate(p);
    EXPECT_THROW(p.finalize(), std::invalid_argument);
  };
  bad([](IceSepParams& p) { p.eta = 0.2; });
  bad([](IceSepParams& p) { p.kappa = 0.5; });
  bad([](IceSepParams& p) { p.d = 21; });
  bad([](IceSepParams& p) { p.list_cap = 0; });
}

TEST(KeyBitGuess, Examples) {
  EXPECT_DOUBLE_EQ(key_bit_guess({}, 10.0, 0.2), 0.0);
  Sample s = repeat({0, Label::kPos}, 8);
  Sample neg = repeat({0, Label::kNeg}, 2);
  s.insert(s.end(), neg.begin(), neg.end());
  EXPECT_DOUBLE_EQ(key_bit_guess(s, 10.0, 0.2), 0.75);
  EXPECT_DOUBLE_EQ(key_bit_guess(repeat({1, Label::kNeg}, 8), 10.0, 0.2), -1.0);
  EXPECT_THROW(key_bit_guess(s, 0.0, 0.2), std::invalid_argument);
}

TEST(RoundVector, ClampsAndRandomizes) {
  std::vector<double> v{1.5, -2.0};
  auto z = round_vector(v, RngHandle{1, 0});
  EXPECT_EQ(z[0], Label::kPos);
  EXPECT_EQ(z[1], Label::kNeg);

  const std::size_t n = 20000;
  std::vector<double> zeros(n, 0.0), sixes(n, 0.6);
  double sum0 = 0, sum6 = 0;
  for (Label y : round_vector(zeros, RngHandle{2, 0})) sum0 += to_int(y);
  for (Label y : round_vector(sixes, RngHandle{3, 0})) sum6 += to_int(y);
  EXPECT_NEAR(sum0 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum6 / n, 0.6, 4.0 * 0.8 / std::sqrt(n));
  EXPECT_EQ(round_vector(zeros, RngHandle{2, 0}), round_vector(zeros, RngHandle{2, 0}));
}

TEST(IceConcept, BlocksFollowTheEncoding) {
  auto inst = default_instance();
  const auto& lay = inst->params().layout;
  IceConcept c = random_concept(inst, RngHandle{4, 0});
  EXPECT_EQ(c.enc, encode(inst->code(), c.key.as_bits()));
  for (Point x = 0; x < lay.key_size(); ++x) {
    ASSERT_EQ(ice_concept_eval(c, x), c.enc.symbol(lay.block_of(x)));
  }
  EXPECT_THROW(IceConcept::make(inst, PrfKey(5)), std::invalid_argument);
}

TEST(IceLearner, ContradictionsOnlyFail) {
  // An odd n always leaves a nonzero balance somewhere, so use an even one.
  IceSepParams p;
  p.n = 2000;
  auto inst = IceSepInstance::build(p, RngHandle{5, 1});
  Sample s;
  for (std::size_t i = 0; i < p.n / 2; ++i) {
    s.push_back({i % 50, Label::kPos});
    s.push_back({i % 50, Label::kNeg});
  }
  ASSERT_TRUE(ice_filter(s).empty());
  IceLearnOutcome out = ice_malicious_learner(s, inst, RngHandle{5, 0});
  EXPECT_TRUE(out.failed);
  EXPECT_EQ(out.failure, "sample empty after ICE");
}

TEST(IceLearner, NoiselessRecoversKey) {
  auto inst = default_instance();
  for (std::uint64_t t = 0; t < 3; ++t) {
    IceConcept c = random_concept(inst, RngHandle{6, t});
    Sample s = clean_sample(c, inst->params().n, RngHandle{7, t});
    IceLearnOutcome out = ice_malicious_learner(s, inst, RngHandle{8, t});
    ASSERT_FALSE(out.failed) << out.failure;
    EXPECT_EQ(out.chosen_key, c.key);
    EXPECT_GE(out.candidates, 1u);
  }
}

TEST(IceLearner, AttackOnOneBlockMovesOnlyItsGuess) {
  auto inst = default_instance();
  const auto& lay = inst->params().layout;
  IceConcept c = random_concept(inst, RngHandle{9, 0});
  Sample s = clean_sample(c, inst->params().n, RngHandle{9, 1});
  IceLearnOutcome before = ice_malicious_learner(s, inst, RngHandle{9, 2});
  const std::size_t target = 3;
  std::size_t changed = 0;
  for (auto& e : s) {
    if (changed == 200) break;
    if (lay.is_key(e.point)) continue;
    e = Example{lay.block_begin(target), negate(c.enc.symbol(target))};
    ++changed;
  }
  IceLearnOutcome after = ice_malicious_learner(s, inst, RngHandle{9, 2});
  for (std::size_t i = 0; i < lay.w; ++i) {
    if (i == target) {
      EXPECT_NE(after.v[i], before.v[i]);
    } else {
      EXPECT_EQ(after.v[i], before.v[i]);
    }
  }
}

TEST(IceLearner, GuessesStayCloseUnderMaliciousNoise) {
  IceSepParams p;
  p.kappa = 0.9;
  auto inst = IceSepInstance::build(p, RngHandle{10, 0});
  const auto& params = inst->params();
  const double bound = (1.0 - 4.0 * params.tau()) * static_cast<double>(params.w);
  std::size_t hits = 0;
  const std::size_t trials = 40;
  for (std::uint64_t t = 0; t < trials; ++t) {
    IceConcept c = random_concept(inst, RngHandle{11, t});
    Sample s = clean_sample(c, params.n, RngHandle{12, t});
    Corrupted bad = strong_malicious_corrupt(
        s, params.eta, random_outlier_strategy(params.layout.domain_size()), RngHandle{13, t});
    IceLearnOutcome out = ice_malicious_learner(bad.sample, inst, RngHandle{14, t});
    double l1 = 0.0;
    for (std::size_t i = 0; i < params.w; ++i) l1 += std::abs(out.v[i] - to_int(c.enc.symbol(i)));
    hits += l1 <= bound;
  }
  EXPECT_GE(static_cast<double>(hits), 0.95 * trials);
}

TEST(IdealizedNasty, BlockTraces) {
  auto inst = default_instance();
  const auto& lay = inst->params().layout;
  IceConcept c = random_concept(inst, RngHandle{15, 0});
  Sample s;
  for (int t = 0; t < 4; ++t) s.push_back({lay.block_begin(0) + t % 3, c.enc.symbol(0)});
  for (int t = 0; t < 3; ++t) s.push_back({lay.block_begin(1) + t, c.enc.symbol(1)});
  s.push_back({lay.value_point(5), ice_concept_eval(c, lay.value_point(5))});
  Rng r(RngHandle{15, 1});
  StrategyOutcome o = ice_idealized_nasty_strategy(c)(AdversaryView{s, 10, {}}, r);
  EXPECT_FALSE(o.exhausted);
  ASSERT_EQ(o.replacements.size(), 4u);  // 2 for the size-4 block, 2 for the size-3 block
  Corrupted out = apply_replacements(s, o, 10, {});
  for (const auto& e : ice_filter(out.sample)) EXPECT_FALSE(lay.is_key(e.point));
  EXPECT_TRUE(ice_vulnerable_pattern_holds(s, out, c));

  StrategyOutcome tight = ice_idealized_nasty_strategy(c)(AdversaryView{s, 3, {}}, r);
  EXPECT_TRUE(tight.exhausted);
  EXPECT_EQ(tight.replacements.size(), 2u);
}

TEST(IdealizedNasty, RarelyExhaustsAtDefaultSize) {
  auto inst = default_instance();
  std::size_t exhausted = 0, pattern = 0;
  const std::size_t trials = 30;
  for (std::uint64_t t = 0; t < trials; ++t) {
    IceConcept c = random_concept(inst, RngHandle{16, t});
    Sample s = clean_sample(c, inst->params().n, RngHandle{17, t});
    Corrupted out =
        nasty_corrupt(s, inst->params().eta, ice_idealized_nasty_strategy(c), RngHandle{18, t});
    exhausted += out.ledger.exhausted;
    pattern += !out.ledger.exhausted && ice_vulnerable_pattern_holds(s, out, c);
  }
  EXPECT_EQ(exhausted, 0u);
  EXPECT_EQ(pattern, trials);
}

AdversaryStrategy flip_one() {
  return [](const AdversaryView& view, Rng&) {
    StrategyOutcome out;
    if (view.budget >= 1) {
      Example e = view.clean[0];
      e.label = negate(e.label);
      out.replacements.push_back({0, e});
    }
    return out;
  };
}

void check_coupling(const AdversaryStrategy& nasty, std::size_t expected_k) {
  Rng r(RngHandle{19, expected_k});
  Sample clean;
  for (int i = 0; i < 300; ++i) {
    Point x = 1 + r.below(15);
    clean.push_back({x, x % 3 == 0 ? Label::kNeg : Label::kPos});
  }
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    CouplingRecord rec;
    Corrupted out = strong_malicious_corrupt(
        clean, 0.4, nasty_via_strong_malicious(nasty, 0.1, 0, &rec), RngHandle{20, t});
    if (!rec.malleable) continue;
    ++checked;
    EXPECT_EQ(rec.nasty.ledger.budget(), std::min<std::size_t>(expected_k, rec.nasty.ledger.allowance));
    EXPECT_EQ(as_multiset(ice_filter(out.sample)), as_multiset(ice_filter(rec.nasty.sample)));
  }
  EXPECT_GT(checked, 40u);
}

TEST(Coupling, NoCorruptionGivesTheCleanRest) { check_coupling(identity_strategy(), 0); }

TEST(Coupling, SingleCorruption) { check_coupling(flip_one(), 1); }

TEST(BlockCounters, HandExample) {
  auto inst = default_instance();
  const auto& lay = inst->params().layout;
  IceConcept c = random_concept(inst, RngHandle{22, 0});
  Label b = c.enc.symbol(0);
  Point x = lay.block_begin(0);
  Sample clean = repeat({x, b}, 4);
  clean.push_back({x + 1, b});
  StrategyOutcome o;
  o.replacements.push_back({0, Example{x, negate(b)}});      // cancels one original
  o.replacements.push_back({4, Example{x + 1, negate(b)}});  // lone wrong example
  Corrupted cor = apply_replacements(clean, o, 2, {});
  BlockCounters bc = block_counters(cor, c);
  EXPECT_EQ(bc.alpha[0], 3);
  EXPECT_EQ(bc.beta[0], 0);
  EXPECT_EQ(bc.gamma[0], 1);
  EXPECT_EQ(bc.delta[0], 1);
  EXPECT_EQ(bc.alpha_prime[0], 2);
  EXPECT_EQ(bc.beta_prime[0], 0);
}

TEST(BlockCounters, MatchLearnerGuesses) {
  auto inst = default_instance();
  const auto& p = inst->params();
  IceConcept c = random_concept(inst, RngHandle{23, 0});
  Sample s = clean_sample(c, p.n, RngHandle{23, 1});
  Corrupted bad = strong_malicious_corrupt(s, p.eta, random_outlier_strategy(p.layout.domain_size()),
                                           RngHandle{23, 2});
  BlockCounters bc = block_counters(bad, c);
  IceLearnOutcome out = ice_malicious_learner(bad.sample, inst, RngHandle{23, 3});
  for (std::size_t i = 0; i < p.w; ++i) {
    double v = to_int(c.enc.symbol(i)) *
               static_cast<double>(bc.alpha_prime[i] + bc.beta_prime[i] - bc.delta[i]) /
               (p.R() * (1.0 - p.eta));
    EXPECT_EQ(v, out.v[i]) << "block " << i;
  }
}

}  // namespace
}  // namespace noisypac
