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
#include <map>

#include "noisypac/learn.hpp"
#include "noisypac/noise.hpp"
#include "noisypac/stats.hpp"

namespace noisypac {
namespace {

constexpr Point kX = 0, kY = 1;

// Oracle: repeatedly delete one (x, +1) and one (x, -1) until no point has both.
Sample naive_ice(Sample s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < s.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < s.size() && !changed; ++j) {
        if (s[i].point == s[j].point && s[i].label != s[j].label) {
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(j));
          s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
      }
    }
  }
  return s;
}

Learner constant_learner(std::size_t n, Label y) {
  return Learner("constant", n, [y](const Sample&, RngHandle) { return Hypothesis::constant(y); });
}

TEST(Ice, SpecExamples) {
  EXPECT_TRUE(ice_filter({}).empty());
  EXPECT_TRUE(ice_filter({{kX, Label::kPos}, {kX, Label::kNeg}}).empty());
  Sample s = {{kX, Label::kPos}, {kX, Label::kPos}, {kX, Label::kNeg}, {kY, Label::kNeg}};
  EXPECT_EQ(as_multiset(ice_filter(s)), as_multiset({{kX, Label::kPos}, {kY, Label::kNeg}}));
}

TEST(Ice, MatchesNaiveOracle) {
  Rng r(RngHandle{21, 0});
  for (int t = 0; t < 500; ++t) {
    Sample s(r.below(30));
    for (auto& e : s) e = example_from_labeled_index(r.below(8));
    Sample out = ice_filter(s);
    EXPECT_EQ(as_multiset(out), as_multiset(naive_ice(s)));
    EXPECT_EQ(ice_filter(out), out);
    EXPECT_EQ((s.size() - out.size()) % 2, 0u);
  }
}

TEST(Ice, SurvivorsAreAscendingPositions) {
  Sample s = {{kX, Label::kNeg}, {kX, Label::kPos}, {kY, Label::kPos}, {kX, Label::kNeg}};
  auto idx = ice_survivors(s);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 2}));
}

TEST(Subsample, SpecExamples) {
  Sample s(10);
  for (std::size_t i = 0; i < 10; ++i) s[i] = Example{i, Label::kPos};
  EXPECT_EQ(as_multiset(subsample_filter(s, 10, RngHandle{1, 0})), s);
  EXPECT_TRUE(subsample_filter(s, 0, RngHandle{1, 0}).empty());
  EXPECT_THROW(subsample_filter(s, 11, RngHandle{1, 0}), std::invalid_argument);
  std::vector<double> counts(10, 0.0);
  for (std::uint64_t t = 0; t < 10000; ++t) counts[subsample_filter(s, 1, RngHandle{2, t})[0].point] += 1;
  for (double c : counts) EXPECT_NEAR(c, 1000.0, 4 * std::sqrt(10000 * 0.1 * 0.9));
}

TEST(Learner, RejectsShortInputAndSubsamplesLong) {
  std::size_t seen = 0;
  Learner a("probe", 5, [&](const Sample& s, RngHandle) {
    seen = s.size();
    return Hypothesis::constant(Label::kPos);
  });
  EXPECT_THROW(a(Sample(4), RngHandle{}), std::invalid_argument);
  a(Sample(9), RngHandle{});
  EXPECT_EQ(seen, 5u);
}

TEST(Amplify, SingleGroupSeesPermutation) {
  Sample s(12);
  for (std::size_t i = 0; i < 12; ++i) s[i] = Example{i, Label::kPos};
  Sample input;
  Learner a("probe", 12, [&](const Sample& g, RngHandle) {
    input = g;
    return Hypothesis::constant(Label::kPos);
  });
  AmplifyParams p;
  p.k = 1;
  Hypothesis h = amplify(a, p, s, RngHandle{3, 0});
  EXPECT_EQ(h.components().size(), 1u);
  EXPECT_EQ(as_multiset(input), s);
}

TEST(Amplify, ConstantLearnerGivesConstant) {
  AmplifyParams p;
  p.k = 5;
  Hypothesis h = amplify(constant_learner(4, Label::kPos), p, Sample(20), RngHandle{1, 0});
  for (Point x = 0; x < 10; ++x) EXPECT_DOUBLE_EQ(h.prob_positive(x), 1.0);
  EXPECT_THROW(amplify(constant_learner(4, Label::kPos), p, Sample(21), RngHandle{}), std::invalid_argument);
}

TEST(Amplify, MixtureErrorIsMeanOfGroupErrors) {
  auto c = Concept::constant(10, Label::kPos);
  auto d = DiscreteDistribution::uniform(10);
  Learner a("tenth", 3, [](const Sample&, RngHandle) {
    return Hypothesis::deterministic(10, [](Point x) { return x == 0 ? Label::kNeg : Label::kPos; });
  });
  AmplifyParams p;
  p.k = 7;
  Hypothesis h = amplify(a, p, draw_clean_sample(d, c, 21, RngHandle{1, 0}), RngHandle{2, 0});
  EXPECT_NEAR(error_rate(h, c, d), 0.1, 1e-12);
}

TEST(Amplify, GroupMarginalsAreIid) {
  const std::size_t n = 50, k = 10, trials = 2000;
  auto d = DiscreteDistribution({0.1, 0.2, 0.3, 0.4});
  auto c = Concept::constant(4, Label::kPos);
  std::vector<double> hist(4, 0.0);
  std::vector<double> corrupt_hist(n + 1, 0.0), binom(n + 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sample s = draw_clean_sample(d, c, n * k, RngHandle{31, t});
    Rng perm(RngHandle{32, t});
    GroupSplit g = split_into_groups(s, n, k, 0, perm);
    for (const auto& e : g.groups[2]) hist[e.point] += 1;
    // Nasty corruptions marked with a sentinel point, then split.
    Corrupted noisy = nasty_corrupt(s, 0.2, constant_strategy({99, Label::kNeg}), RngHandle{33, t});
    Rng perm2(RngHandle{34, t});
    GroupSplit g2 = split_into_groups(noisy.sample, n, k, 0, perm2);
    std::size_t marked = 0;
    for (const auto& e : g2.groups[5]) marked += e.point == 99;
    corrupt_hist[marked] += 1;
  }
  EXPECT_TRUE(stats::chi_square_gof(hist, d.weights()).passes(1e-3));
  for (std::size_t j = 0; j <= n; ++j) binom[j] = stats::binomial_pmf(n, j, 0.2);
  EXPECT_TRUE(stats::chi_square_gof(corrupt_hist, binom).passes(1e-3));
}

TEST(AmplifyParams, Derive) {
  AmplifyParams p = AmplifyParams::derive(0.1, 0.05);
  EXPECT_EQ(p.k, static_cast<std::size_t>(std::ceil(std::log(20.0) / 0.01)));
  EXPECT_THROW(AmplifyParams::derive(0.0, 0.05), std::invalid_argument);
  EXPECT_THROW(AmplifyParams::derive(0.1, 1.0), std::invalid_argument);
}

TEST(BadAmplify, SpecExamples) {
  Sample s(9, Example{0, Label::kPos});
  auto one = bad_amplify(constant_learner(3, Label::kNeg), 1, 6, s, RngHandle{1, 0});
  EXPECT_EQ(one.index, 0u);
  // Learner i returns the correct constant only for the group whose first label is -1.
  Sample mixed(4 * 3 + 5, Example{0, Label::kPos});
  mixed[0].label = Label::kNeg;
  Learner picky("picky", 3, [](const Sample& g, RngHandle) {
    bool marked = false;
    for (const auto& e : g) marked |= e.label == Label::kNeg;
    return Hypothesis::constant(marked ? Label::kPos : Label::kNeg);
  });
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto r = bad_amplify(picky, 4, 5, mixed, RngHandle{4, t});
    bool test_has_neg = false;
    for (const auto& e : r.split.test) test_has_neg |= e.label == Label::kNeg;
    if (test_has_neg) continue;
    EXPECT_DOUBLE_EQ(r.test_disagreements[r.index], 0.0);
    EXPECT_EQ(r.chosen.prob_positive(0), 1.0);
  }
}

TEST(BadAmplify, UniformTieBreak) {
  Sample s(4 * 2 + 3, Example{0, Label::kPos});
  std::vector<double> counts(4, 0.0);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    counts[bad_amplify(constant_learner(2, Label::kPos), 4, 3, s, RngHandle{5, t}).index] += 1;
  }
  for (double c : counts) EXPECT_NEAR(c, 2500.0, 4 * std::sqrt(10000 * 0.25 * 0.75));
}

TEST(SelectBest, SpecExamples) {
  Sample test(10);
  for (std::size_t i = 0; i < 10; ++i) test[i] = Example{i, Label::kPos};
  auto wrong_on = [](std::size_t m) {
    return Hypothesis::deterministic(0, [m](Point x) { return x < m ? Label::kNeg : Label::kPos; });
  };
  EXPECT_EQ(select_best_hypothesis({wrong_on(3)}, test).index, 0u);
  EXPECT_EQ(select_best_hypothesis({wrong_on(5), wrong_on(2), wrong_on(4), wrong_on(2)}, test).index, 1u);
  EXPECT_EQ(select_best_hypothesis({wrong_on(4), wrong_on(1), wrong_on(2)}, test).index, 1u);
  EXPECT_THROW(select_best_hypothesis({}, test), std::invalid_argument);
}

TEST(SelectBest, ArgminInvariantUnderMonotoneTransform) {
  Rng r(RngHandle{6, 0});
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s(1 + r.below(8));
    for (auto& v : s) v = static_cast<double>(r.below(5));
    std::vector<double> f = s;
    for (auto& v : f) v = std::exp(0.7 * v) + 3.0;
    EXPECT_EQ(argmin_lowest_index(s), argmin_lowest_index(f));
  }
}

TEST(BvSampleSize, SpecExamples) {
  EXPECT_EQ(bv_sample_size(1, 1, 1.0, 1.0), 1u);
  EXPECT_EQ(bv_sample_size(10, 8, 0.5, 1.0), 2560000u);
  EXPECT_THROW(bv_sample_size(1, 1, 0.0, 1.0), std::invalid_argument);
}

TEST(ExpectedError, SpecExamples) {
  auto c = Concept::from_table({Label::kPos, Label::kNeg, Label::kPos, Label::kNeg});
  auto d = DiscreteDistribution::uniform(4);
  Learner exact("exact", 5, [&](const Sample&, RngHandle) { return Hypothesis::from_concept(c); });
  NoiseProcess flip = [](const Sample& s, RngHandle r) {
    return nasty_corrupt(s, 0.5, flip_first_strategy(), r).sample;
  };
  ErrorEstimate e = expected_error_estimate(exact, d, c, flip, 50, RngHandle{1, 0});
  EXPECT_DOUBLE_EQ(e.mean, 0.0);
  EXPECT_DOUBLE_EQ(e.halfwidth, 0.0);
  Learner coin("coin", 5, [](const Sample&, RngHandle r) {
    Rng g(r);
    return Hypothesis::constant(g.bernoulli(0.5) ? Label::kPos : Label::kNeg);
  });
  ErrorEstimate e2 = expected_error_estimate(coin, d, c, nullptr, 400, RngHandle{2, 0});
  EXPECT_NEAR(e2.mean, 0.5, 1e-12);
  ErrorEstimate e3 = expected_error_estimate(coin, d, c, nullptr, 1, RngHandle{2, 0});
  EXPECT_FALSE(e3.halfwidth_defined);
  EXPECT_TRUE(std::isnan(e3.halfwidth));
}

}  // namespace
}  // namespace noisypac
