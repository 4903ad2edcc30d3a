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

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "noisypac/bench.hpp"
#include "noisypac/core.hpp"
#include "noisypac/learn.hpp"
#include "noisypac/noise.hpp"
#include "noisypac/stats.hpp"
#include "scenario_util.hpp"

namespace noisypac {

using detail::b2d;
using detail::cat;
using detail::fraction;

namespace {

// ---------------------------------------------------------------------------
// ICE checks

struct IceCheck {
  bool idempotent = true;
  bool no_contradiction = true;
  bool even_drop = true;
  bool balance_kept = true;
  bool permutation_invariant = true;
  std::size_t output_length = 0;

  bool all() const {
    return idempotent && no_contradiction && even_drop && balance_kept && permutation_invariant;
  }
};

std::map<Point, long> balances(const Sample& s) {
  std::map<Point, long> b;
  for (const auto& e : s) b[e.point] += to_int(e.label);
  std::erase_if(b, [](const auto& kv) { return kv.second == 0; });
  return b;
}

IceCheck check_ice(const Sample& s, const Sample& permuted) {
  IceCheck r;
  Sample out = ice_filter(s);
  r.output_length = out.size();
  r.idempotent = ice_filter(out) == out;
  std::map<Point, int> seen;
  for (const auto& e : out) seen[e.point] |= (e.label == Label::kPos ? 1 : 2);
  for (const auto& [x, mask] : seen) {
    if (mask == 3) r.no_contradiction = false;
  }
  r.even_drop = (s.size() - out.size()) % 2 == 0;
  r.balance_kept = balances(s) == balances(out);
  r.permutation_invariant = as_multiset(out) == as_multiset(ice_filter(permuted));
  return r;
}

}  // namespace

TrialReport scenario_ice_exhaustive(const ScenarioContext& ctx) {
  const std::size_t domain = ctx.count("domain");
  const std::size_t max_len = ctx.count("max_length");
  if (domain == 0 || domain > 8 || max_len > 8) {
    throw std::invalid_argument("ice-exhaustive: domain must be 1..8 and max_length <= 8");
  }
  TrialReport rep;
  rep.columns = {"length", "samples", "idempotent_fail", "contradiction_fail", "even_drop_fail",
                 "balance_fail", "permutation_fail"};
  const std::size_t alphabet = 2 * domain;
  std::size_t total = 0, failures = 0;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= alphabet;
    std::vector<double> fails(5, 0.0);
    Sample s(len);
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i) {
        s[i] = example_from_labeled_index(c % alphabet);
        c /= alphabet;
      }
      // Every ordering is enumerated, so comparing each sample against its
      // sorted form covers all permutations.
      IceCheck r = check_ice(s, as_multiset(s));
      fails[0] += !r.idempotent;
      fails[1] += !r.no_contradiction;
      fails[2] += !r.even_drop;
      fails[3] += !r.balance_kept;
      fails[4] += !r.permutation_invariant;
      if (!r.all()) ++failures;
    }
    total += count;
    std::vector<double> row{static_cast<double>(len), static_cast<double>(count)};
    row.insert(row.end(), fails.begin(), fails.end());
    rep.rows.push_back(std::move(row));
  }
  rep.aggregates["samples"] = total;
  rep.aggregates["failing_samples"] = failures;
  rep.verdicts.push_back({"ice_properties_exhaustive", failures == 0,
                          cat(failures, " of ", total, " samples violate an ICE property")});
  return rep;
}

TrialReport scenario_ice_filter_unit(const ScenarioContext& ctx) {
  const std::size_t domain = ctx.count("domain");
  const std::size_t max_len = ctx.count("max_length");
  if (domain == 0) throw std::invalid_argument("ice-filter-unit: domain must be positive");
  TrialReport rep;
  rep.columns = {"trial",        "length",        "output_length", "idempotent",
                 "no_contradiction", "even_drop", "balance_kept",  "permutation_invariant"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    Rng rng(ctx.rng.child(t));
    std::size_t len = static_cast<std::size_t>(rng.below(max_len + 1));
    Sample s(len);
    for (auto& e : s) e = example_from_labeled_index(rng.below(2 * domain));
    Sample perm = s;
    rng.shuffle(perm);
    IceCheck r = check_ice(s, perm);
    rep.rows[t] = {static_cast<double>(t),         static_cast<double>(len),
                   static_cast<double>(r.output_length), b2d(r.idempotent),
                   b2d(r.no_contradiction),         b2d(r.even_drop),
                   b2d(r.balance_kept),             b2d(r.permutation_invariant)};
  });
  std::size_t bad = 0;
  for (const auto& row : rep.rows) {
    if (std::any_of(row.begin() + 3, row.end(), [](double v) { return v == 0.0; })) ++bad;
  }
  rep.aggregates["failing_trials"] = bad;
  rep.verdicts.push_back(
      {"ice_properties_random", bad == 0, cat(bad, " of ", ctx.trials, " trials fail")});
  return rep;
}

// ---------------------------------------------------------------------------
// Nasty budget law

TrialReport scenario_nasty_budget(const ScenarioContext& ctx) {
  const std::size_t n = ctx.count("n");
  const double eta = ctx.num("eta");
  const double sig = ctx.num("significance");
  check_rate(eta);
  TrialReport rep;
  rep.columns = {"trial", "budget", "corrupted"};
  rep.rows.resize(ctx.trials);
  const AdversaryStrategy adversary = flip_first_strategy();
  parallel_for(ctx.trials, [&](std::size_t t) {
    Sample clean(n, Example{0, Label::kPos});
    Corrupted c = nasty_corrupt(clean, eta, adversary, ctx.rng.child(t));
    rep.rows[t] = {static_cast<double>(t), static_cast<double>(c.ledger.allowance),
                   static_cast<double>(c.ledger.budget())};
  });
  std::vector<double> observed(n + 1, 0.0), probs(n + 1, 0.0), budgets;
  std::size_t mismatched = 0;
  for (const auto& row : rep.rows) {
    observed[static_cast<std::size_t>(row[1])] += 1.0;
    budgets.push_back(row[1]);
    if (row[1] != row[2]) ++mismatched;
  }
  for (std::size_t k = 0; k <= n; ++k) probs[k] = stats::binomial_pmf(n, k, eta);
  stats::ChiSquare chi = stats::chi_square_gof(observed, probs);
  double sd = stats::sample_stddev(budgets);
  rep.aggregates["mean_budget"] = stats::mean(budgets);
  rep.aggregates["expected_mean"] = static_cast<double>(n) * eta;
  rep.aggregates["variance"] = sd * sd;
  rep.aggregates["expected_variance"] = static_cast<double>(n) * eta * (1.0 - eta);
  rep.aggregates["chi_square"] = detail::chi_json(chi);
  rep.aggregates["mismatched_trials"] = mismatched;
  rep.verdicts.push_back({"budget_matches_binomial", chi.passes(sig) && mismatched == 0,
                          cat("chi-square p = ", chi.p_value, " vs significance ", sig,
                              "; budget/ledger mismatches ", mismatched)});
  return rep;
}

// ---------------------------------------------------------------------------
// Amplify concentration

TrialReport scenario_amplify_concentration(const ScenarioContext& ctx) {
  const std::size_t k = ctx.count("k");
  const std::size_t n = ctx.count("n");
  const std::size_t domain = ctx.count("domain");
  const double base = ctx.num("base_error");
  const double eta = ctx.num("eta");
  const double delta = ctx.num("delta");
  check_rate(eta);
  if (k == 0 || n == 0 || domain == 0) throw std::invalid_argument("amplify: k, n, domain > 0");
  // The crafted learner errs with probability base + (mislabeled examples)/n,
  // so its expected error under eta-rate nasty noise is at most base + eta.
  const double eps = base + eta;
  const double threshold =
      eps * static_cast<double>(k) + 3.0 * std::sqrt(static_cast<double>(k) * std::log(1.0 / delta));
  TrialReport rep;
  rep.columns = {"trial", "budget", "sum_error", "violation"};
  rep.rows.resize(ctx.trials);
  const DiscreteDistribution dist = DiscreteDistribution::uniform(domain);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    Rng pick(trial.child(0));
    std::vector<Label> table(domain);
    for (auto& y : table) y = pick.bernoulli(0.5) ? Label::kPos : Label::kNeg;
    Concept c = Concept::from_table(table);
    Hypothesis good = Hypothesis::from_concept(c);
    Hypothesis bad = good.negated();
    Learner a("crafted", n, [&](const Sample& s, RngHandle r) {
      std::size_t wrong = 0;
      for (const auto& e : s) wrong += e.label != c(e.point);
      Rng coin(r);
      double p = std::min(1.0, base + static_cast<double>(wrong) / static_cast<double>(n));
      return coin.bernoulli(p) ? bad : good;
    });
    Sample clean = draw_clean_sample(dist, c, n * k, trial.child(1));
    Corrupted noisy = nasty_corrupt(clean, eta, flip_first_strategy(), trial.child(2));
    AmplifyParams params;
    params.k = k;
    Hypothesis mix = amplify(a, params, noisy.sample, trial.child(3));
    double sum = 0.0;
    for (const auto& h : mix.components()) sum += error_rate(h, c, dist);
    rep.rows[t] = {static_cast<double>(t), static_cast<double>(noisy.ledger.budget()), sum,
                   b2d(sum > threshold)};
  });
  std::size_t violations = 0;
  std::vector<double> sums;
  for (const auto& row : rep.rows) {
    violations += row[3] != 0.0;
    sums.push_back(row[2]);
  }
  double freq = fraction(violations, ctx.trials);
  rep.aggregates["eps"] = eps;
  rep.aggregates["threshold"] = threshold;
  rep.aggregates["mean_sum_error"] = stats::mean(sums);
  rep.aggregates["max_sum_error"] = *std::max_element(sums.begin(), sums.end());
  rep.aggregates["violations"] = detail::frequency_json(violations, ctx.trials);
  rep.verdicts.push_back({"sum_error_concentrates", freq < delta,
                          cat("frequency of sum error > ", threshold, " is ", freq,
                              " (limit ", delta, ")")});
  return rep;
}

// ---------------------------------------------------------------------------
// BadAmplify counterexample
//
// X_small is [0, 100(nk + n_test)). A point of X_large is stored as
// X_small + id, where id indexes a per-trial registry of subsets of X_small.

namespace {

struct LargeRegistry {
  std::size_t small = 0;
  std::vector<std::shared_ptr<const std::vector<bool>>> subsets;
  std::vector<std::size_t> sizes;

  Point add(const Sample& s) {
    auto set = std::make_shared<std::vector<bool>>(small, false);
    std::size_t count = 0;
    for (const auto& e : s) {
      if (e.point < small && !(*set)[e.point]) {
        (*set)[e.point] = true;
        ++count;
      }
    }
    subsets.push_back(set);
    sizes.push_back(count);
    return static_cast<Point>(small + subsets.size() - 1);
  }
};

struct CoinLearner {
  std::shared_ptr<LargeRegistry> registry;
  Label target = Label::kPos;
  double heads = 1.0;
  std::size_t n = 0;
  // Exact error under D (uniform on X_small) of each hypothesis, in call order.
  std::shared_ptr<std::vector<double>> errors = std::make_shared<std::vector<double>>();

  Learner learner() const {
    CoinLearner self = *this;
    return Learner("appendix-a", n, [self](const Sample& s, RngHandle r) {
      std::size_t pos = 0;
      for (const auto& e : s) pos += e.label == Label::kPos;
      Label b = 2 * pos >= s.size() ? Label::kPos : Label::kNeg;
      Rng coin(r);
      if (coin.bernoulli(self.heads)) {
        self.errors->push_back(b == self.target ? 0.0 : 1.0);
        return Hypothesis::constant(b);
      }
      const LargeRegistry& reg = *self.registry;
      std::shared_ptr<const std::vector<bool>> set;
      Point x_large = static_cast<Point>(-1);
      std::size_t size = 0;
      for (const auto& e : s) {
        if (e.point >= reg.small) {
          x_large = e.point;
          set = reg.subsets.at(e.point - reg.small);
          size = reg.sizes.at(e.point - reg.small);
          break;
        }
      }
      double inside = static_cast<double>(size) / static_cast<double>(reg.small);
      self.errors->push_back(b == self.target ? 1.0 - inside : inside);
      return Hypothesis::deterministic(0, [set, x_large, b](Point x) {
        bool in = x == x_large || (set && x < set->size() && (*set)[x]);
        return in ? b : negate(b);
      });
    });
  }
};

}  // namespace

TrialReport scenario_badamplify(const ScenarioContext& ctx) {
  const double eps = ctx.num("eps");
  const double eta = ctx.num("eta");
  const std::size_t n = ctx.count("n");
  const std::size_t k = ctx.count("k");
  const std::size_t n_test = ctx.count("n_test");
  const bool force_heads = ctx.flag("force_heads");
  const double bad_low = ctx.num("bad_low");
  const double bad_high = ctx.num("bad_high");
  const double mix_threshold = ctx.num("mixture_threshold");
  const double mix_max = ctx.num("mixture_max_freq");
  if (!(eta >= 0.01 && eta <= 0.49)) throw std::invalid_argument("badamplify: eta in [0.01, 0.49]");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("badamplify: eps in [0, 1]");
  if (n == 0 || k == 0) throw std::invalid_argument("badamplify: n and k must be positive");
  const std::size_t total = n * k + n_test;
  const std::size_t small = 100 * total;
  // The coin's 2^{-Omega(n)} correction is taken as zero.
  const double heads = force_heads ? 1.0 : 1.0 - eps;

  TrialReport rep;
  rep.columns = {"trial",          "budget",          "bad_candidates",   "chosen_index",
                 "chosen_error",   "bad_output",      "amplify_budget",   "amplify_bad_groups",
                 "amplify_error",  "amplify_exceeds"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    Rng pick(trial.child(0));
    const Label target = pick.bernoulli(0.5) ? Label::kPos : Label::kNeg;
    auto registry = std::make_shared<LargeRegistry>();
    registry->small = small;

    auto draw = [&](std::size_t m, RngHandle h) {
      Rng g(h);
      Sample s(m);
      for (auto& e : s) e = Example{g.below(small), target};
      return s;
    };
    // The adversary rewrites its first z positions to the X_large point that
    // encodes every X_small point of the clean sample.
    auto corrupt = [&](const Sample& clean, RngHandle h) {
      Point x_large = registry->add(clean);
      return nasty_corrupt(clean, eta, constant_strategy(Example{x_large, target}), h);
    };

    CoinLearner bad_side{registry, target, heads, n};
    Corrupted s_big = corrupt(draw(total, trial.child(1)), trial.child(2));
    BadAmplifyResult r = bad_amplify(bad_side.learner(), k, n_test, s_big.sample, trial.child(3));
    std::size_t bad_candidates = 0;
    for (double e : *bad_side.errors) bad_candidates += e >= 0.99;
    double chosen_error = bad_side.errors->at(r.index);

    CoinLearner mix_side{registry, target, heads, n};
    Corrupted s_amp = corrupt(draw(n * k, trial.child(4)), trial.child(5));
    AmplifyParams params;
    params.k = k;
    amplify(mix_side.learner(), params, s_amp.sample, trial.child(6));
    std::size_t amp_bad = 0;
    double amp_error = 0.0;
    for (double e : *mix_side.errors) {
      amp_bad += e >= 0.99;
      amp_error += e;
    }
    amp_error /= static_cast<double>(k);

    rep.rows[t] = {static_cast<double>(t),
                   static_cast<double>(s_big.ledger.budget()),
                   static_cast<double>(bad_candidates),
                   static_cast<double>(r.index),
                   chosen_error,
                   b2d(chosen_error >= 0.99),
                   static_cast<double>(s_amp.ledger.budget()),
                   static_cast<double>(amp_bad),
                   amp_error,
                   b2d(amp_error > mix_threshold)};
  });
  std::size_t bad = 0, exceed = 0;
  std::vector<double> amp_errors, bad_counts;
  for (const auto& row : rep.rows) {
    bad += row[5] != 0.0;
    exceed += row[9] != 0.0;
    amp_errors.push_back(row[8]);
    bad_counts.push_back(row[2]);
  }
  double bad_freq = fraction(bad, ctx.trials);
  double exceed_freq = fraction(exceed, ctx.trials);
  rep.aggregates["x_small"] = small;
  rep.aggregates["coin_heads"] = heads;
  rep.aggregates["bad_output"] = detail::frequency_json(bad, ctx.trials);
  rep.aggregates["gap_to_eps"] = eps - bad_freq;
  rep.aggregates["mean_bad_candidates"] = stats::mean(bad_counts);
  rep.aggregates["amplify_mean_error"] = stats::mean(amp_errors);
  rep.aggregates["amplify_exceeds"] = detail::frequency_json(exceed, ctx.trials);
  rep.verdicts.push_back({"badamplify_bad_frequency", bad_freq >= bad_low && bad_freq <= bad_high,
                          cat("bad-output frequency ", bad_freq, " (target [", bad_low, ", ",
                              bad_high, "])")});
  rep.verdicts.push_back({"amplify_mixture_error", exceed_freq < mix_max,
                          cat("mixture error > ", mix_threshold, " in ", exceed_freq,
                              " of trials (limit ", mix_max, ")")});
  return rep;
}

// ---------------------------------------------------------------------------
// Reduction demos

TrialReport scenario_reduction_demo(const ScenarioContext& ctx) {
  const std::size_t points = ctx.count("points");
  const double eta = ctx.num("eta");
  const std::size_t m = ctx.count("m");
  const double huber_eta = ctx.num("huber_eta");
  const std::size_t huber_n = ctx.count("huber_samples");
  const double tv_tol = ctx.num("tv_tolerance");
  const double sig = ctx.num("significance");
  check_rate(eta);
  check_rate(huber_eta);
  if (points == 0 || points > 64) {
    throw std::invalid_argument("reduction-demo: exact comparison needs 1..64 points");
  }
  TrialReport rep;

  // (a) Huber contamination realized by a malicious adversary.
  Rng setup(ctx.rng.child(0));
  std::vector<double> dw(points), qw(2 * points);
  for (auto& w : dw) w = 1.0 + setup.uniform01();
  for (auto& w : qw) w = 1.0 + setup.uniform01();
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    for (double& x : v) x /= s;
  };
  normalize(dw);
  normalize(qw);
  std::vector<Label> table(points);
  for (auto& y : table) y = setup.bernoulli(0.5) ? Label::kPos : Label::kNeg;
  const DiscreteDistribution d(dw);
  const DiscreteDistribution q(qw);
  const Concept c = Concept::from_table(table);
  const DiscreteDistribution dc = labeled_distribution(d, c);

  // Huber marginal: (1 - eta) Dc + eta Q.
  std::vector<double> huber(2 * points);
  for (std::size_t j = 0; j < huber.size(); ++j) {
    huber[j] = (1.0 - huber_eta) * dc.weight(j) + huber_eta * q.weight(j);
  }
  // Malicious marginal, summed over the per-position coin and draws: tails
  // emits (x, c(x)) with x ~ D, heads emits the outlier strategy's draw.
  std::vector<double> malicious(2 * points, 0.0);
  for (std::size_t x = 0; x < points; ++x) {
    malicious[labeled_index(Example{x, c(x)})] += (1.0 - huber_eta) * d.weight(x);
  }
  for (std::size_t j = 0; j < malicious.size(); ++j) malicious[j] += huber_eta * q.weight(j);
  const DiscreteDistribution huber_law(huber), malicious_law(malicious);
  const double tv = tv_distance(huber_law, malicious_law);
  bool within_budget = true;
  try {
    tv_corrupt(dc, huber_eta, huber_law);
  } catch (const TvBudgetExceeded&) {
    within_budget = false;
  }

  std::vector<double> h_counts(2 * points, 0.0), m_counts(2 * points, 0.0);
  for (const auto& e : huber_sample(d, c, huber_eta, q, huber_n, ctx.rng.child(1))) {
    h_counts[labeled_index(e)] += 1.0;
  }
  Corrupted mal = malicious_corrupt(d, c, huber_n, huber_eta, outlier_draw_strategy(q),
                                    ctx.rng.child(2));
  for (const auto& e : mal.sample) m_counts[labeled_index(e)] += 1.0;
  stats::ChiSquare chi_h = stats::chi_square_gof(h_counts, huber);
  stats::ChiSquare chi_m = stats::chi_square_gof(m_counts, huber);
  stats::ChiSquare chi_2 = stats::chi_square_two_sample(h_counts, m_counts);

  rep.aggregates["huber_tv"] = tv;
  rep.aggregates["huber_within_tv_budget"] = within_budget;
  rep.aggregates["huber_sample_chi_square"] = detail::chi_json(chi_h);
  rep.aggregates["malicious_sample_chi_square"] = detail::chi_json(chi_m);
  rep.aggregates["two_sample_chi_square"] = detail::chi_json(chi_2);
  rep.verdicts.push_back({"huber_as_malicious_exact", tv <= tv_tol && within_budget,
                          cat("marginal TV distance ", tv, " (tolerance ", tv_tol, ")")});
  rep.verdicts.push_back(
      {"huber_as_malicious_sampled",
       chi_h.passes(sig) && chi_m.passes(sig) && chi_2.passes(sig),
       cat("chi-square p-values huber ", chi_h.p_value, ", malicious ", chi_m.p_value,
           ", two-sample ", chi_2.p_value)});

  // (b) Fixed-rate adversary tracking a standard nasty adversary.
  const auto fixed = static_cast<std::size_t>(std::floor(eta * static_cast<double>(m)));
  rep.columns = {"trial", "budget", "fixed_budget", "excess", "positional_difference"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(100 + t);
    Sample clean = draw_clean_sample(d, c, m, trial.child(0));
    Corrupted standard =
        nasty_corrupt(clean, eta, random_outlier_strategy(points), trial.child(1));
    const CorruptionLedger& led = standard.ledger;
    // Same corruptions as the standard adversary up to floor(eta m); any
    // remaining fixed budget rewrites untouched positions with themselves.
    AdversaryStrategy tracker = [&](const AdversaryView& view, Rng&) {
      StrategyOutcome out;
      std::vector<bool> used(view.clean.size(), false);
      for (std::size_t i = 0; i < led.budget() && out.replacements.size() < view.budget; ++i) {
        out.replacements.push_back({led.corrupted_indices[i], led.introduced[i]});
        used[led.corrupted_indices[i]] = true;
      }
      for (std::size_t i = 0; i < view.clean.size() && out.replacements.size() < view.budget;
           ++i) {
        if (!used[i]) out.replacements.push_back({i, view.clean[i]});
      }
      return out;
    };
    Corrupted tracked = fixed_rate_nasty_corrupt(clean, eta, tracker, trial.child(2));
    std::size_t diff = 0;
    for (std::size_t i = 0; i < m; ++i) diff += standard.sample[i] != tracked.sample[i];
    std::size_t z = led.budget();
    rep.rows[t] = {static_cast<double>(t), static_cast<double>(z), static_cast<double>(fixed),
                   static_cast<double>(z > fixed ? z - fixed : 0), static_cast<double>(diff)};
  });
  std::vector<double> diffs, excess;
  for (const auto& row : rep.rows) {
    excess.push_back(row[3]);
    diffs.push_back(row[4]);
  }
  const double bound = std::sqrt(static_cast<double>(m)) + 1.0;
  const double mean_diff = stats::mean(diffs);
  rep.aggregates["fixed_budget"] = fixed;
  rep.aggregates["mean_excess"] = stats::mean(excess);
  rep.aggregates["mean_positional_difference"] = mean_diff;
  rep.aggregates["bound"] = bound;
  rep.verdicts.push_back({"fixed_rate_tracks_standard", mean_diff <= bound,
                          cat("mean positional difference ", mean_diff, " (bound ", bound, ")")});
  return rep;
}

}  // namespace noisypac
