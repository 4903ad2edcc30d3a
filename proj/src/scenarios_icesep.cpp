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
#include <stdexcept>

#include "noisypac/bench.hpp"
#include "noisypac/icesep.hpp"
#include "noisypac/learn.hpp"
#include "noisypac/noise.hpp"
#include "noisypac/stats.hpp"
#include "scenario_util.hpp"

namespace noisypac {

using detail::b2d;
using detail::cat;
using detail::fraction;

namespace {

bool has_contradiction(const Sample& s) {
  std::map<Point, int> seen;
  for (const auto& e : s) seen[e.point] |= (e.label == Label::kPos ? 1 : 2);
  return std::any_of(seen.begin(), seen.end(), [](const auto& kv) { return kv.second == 3; });
}

double l1_to_codeword(const std::vector<double>& v, const Codeword& enc) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::abs(v[i] - to_int(enc.symbol(i)));
  return acc;
}

// v recomputed from block counters must equal the learner's v exactly.
bool counters_match(const Corrupted& corrupted, const IceConcept& c,
                    const std::vector<double>& v) {
  const IceSepParams& p = c.instance->params();
  BlockCounters bc = block_counters(corrupted, c);
  for (std::size_t i = 0; i < p.w; ++i) {
    long signed_sum = to_int(c.enc.symbol(i)) * (bc.alpha_prime[i] + bc.beta_prime[i] - bc.delta[i]);
    double want = static_cast<double>(signed_sum) / (p.R() * (1.0 - p.eta));
    if (want != v[i]) return false;
  }
  return true;
}

// Strong malicious strategy writing mislabeled examples at uniformly random
// key points, used only as an informational stress run.
AdversaryStrategy key_flip_strategy(const IceConcept& c) {
  return [c](const AdversaryView& view, Rng& rng) {
    const KeyValueLayout& lay = c.instance->params().layout;
    StrategyOutcome out;
    for (std::size_t i : view.allowed) {
      Point x = rng.below(lay.key_size());
      out.replacements.push_back({i, Example{x, negate(ice_concept_eval(c, x))}});
    }
    return out;
  };
}

}  // namespace

// ---------------------------------------------------------------------------
// Rounding lemma

TrialReport scenario_round_lemma(const ScenarioContext& ctx) {
  const std::size_t w = ctx.count("w");
  const double kappa = ctx.num("kappa");
  const double success_freq = ctx.num("success_freq");
  if (w == 0 || !(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("round-lemma: bad w/kappa");
  const double budget = (1.0 - kappa) * static_cast<double>(w);
  const double bound = 0.5 * (1.0 - kappa / 2.0) * static_cast<double>(w);
  TrialReport rep;
  rep.columns = {"trial", "pattern", "l1", "hamming", "holds"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    Rng rng(ctx.rng.child(t).child(0));
    std::vector<double> u(w), d(w, 0.0);
    for (auto& x : u) x = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const std::size_t pattern = t % 3;
    if (pattern == 0) {
      // Spread: shrink every coordinate toward zero.
      for (std::size_t i = 0; i < w; ++i) d[i] = -u[i] * rng.uniform01();
    } else if (pattern == 1) {
      // Concentrated: flip as many coordinates as the budget allows.
      std::vector<std::size_t> idx(w);
      for (std::size_t i = 0; i < w; ++i) idx[i] = i;
      rng.shuffle(idx);
      auto flips = static_cast<std::size_t>(budget / 2.0);
      for (std::size_t i = 0; i < flips && i < w; ++i) d[idx[i]] = -2.0 * u[idx[i]];
    } else {
      // Mixed: arbitrary shifts, some pushing past +-1.
      for (std::size_t i = 0; i < w; ++i) d[i] = 3.0 * rng.uniform01() - 1.5;
    }
    double l1 = 0.0;
    for (double x : d) l1 += std::abs(x);
    if (l1 > budget) {
      for (double& x : d) x *= budget / l1;
    }
    std::vector<double> v(w);
    l1 = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      v[i] = u[i] + d[i];
      l1 += std::abs(v[i] - u[i]);
    }
    std::vector<Label> z = round_vector(v, ctx.rng.child(t).child(1));
    std::size_t ham = 0;
    for (std::size_t i = 0; i < w; ++i) ham += to_int(z[i]) != static_cast<int>(u[i]);
    rep.rows[t] = {static_cast<double>(t), static_cast<double>(pattern), l1,
                   static_cast<double>(ham), b2d(static_cast<double>(ham) <= bound)};
  });
  std::size_t holds = 0;
  std::vector<double> hams, l1s;
  for (const auto& row : rep.rows) {
    holds += row[4] != 0.0;
    hams.push_back(row[3]);
    l1s.push_back(row[2]);
  }
  const double freq = fraction(holds, ctx.trials);
  rep.aggregates["l1_budget"] = budget;
  rep.aggregates["max_l1"] = *std::max_element(l1s.begin(), l1s.end());
  rep.aggregates["hamming_bound"] = bound;
  rep.aggregates["mean_hamming"] = stats::mean(hams);
  rep.aggregates["max_hamming"] = *std::max_element(hams.begin(), hams.end());
  rep.aggregates["holds"] = detail::frequency_json(holds, ctx.trials);
  rep.verdicts.push_back({"rounding_hamming_bound", freq >= success_freq,
                          cat("bound ", bound, " holds in ", freq, " of trials (need ",
                              success_freq, ")")});
  return rep;
}

// ---------------------------------------------------------------------------
// Coupling of nasty noise into strong malicious noise behind ICE

TrialReport scenario_ice_coupling(const ScenarioContext& ctx) {
  const double eta_nasty = ctx.num("eta_nasty");
  const double eta_strong = ctx.num("eta_strong");
  const std::size_t min_n = ctx.count("min_n");
  const std::size_t max_n = ctx.count("max_n");
  check_rate(eta_nasty);
  check_rate(eta_strong);
  if (min_n == 0 || max_n < min_n) throw std::invalid_argument("ice-coupling: bad size range");
  constexpr std::size_t kDomain = 16;
  constexpr Point kFiller = 0;
  TrialReport rep;
  rep.columns = {"trial", "n", "strategy", "m", "k", "malleable", "ice_equal",
                 "nasty_contradiction_free", "equals_nasty_output"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    Rng pick(trial.child(0));
    const std::size_t n = min_n + static_cast<std::size_t>(pick.below(max_n - min_n + 1));
    std::vector<Label> table(kDomain);
    for (auto& y : table) y = pick.bernoulli(0.5) ? Label::kPos : Label::kNeg;
    const Concept c = Concept::from_table(table);
    const std::size_t kind = static_cast<std::size_t>(pick.below(5));
    AdversaryStrategy nasty;
    switch (kind) {
      case 0: nasty = flip_first_strategy(); break;
      case 1: nasty = random_outlier_strategy(kDomain); break;
      case 2: nasty = constant_strategy(Example{pick.below(kDomain), Label::kNeg}); break;
      case 3: nasty = copy_clean_strategy(); break;
      default: nasty = contradictory_pair_strategy(pick.below(kDomain)); break;
    }
    Sample clean = draw_clean_sample(DiscreteDistribution::uniform(kDomain), c, n, trial.child(1));
    CouplingRecord rec;
    Corrupted strong = strong_malicious_corrupt(
        clean, eta_strong, nasty_via_strong_malicious(nasty, eta_nasty, kFiller, &rec),
        trial.child(2));
    Sample filtered = as_multiset(ice_filter(strong.sample));
    bool ice_equal = filtered == as_multiset(ice_filter(rec.nasty.sample));
    bool free = !has_contradiction(rec.nasty.sample);
    bool equals_output = free && filtered == as_multiset(rec.nasty.sample);
    rep.rows[t] = {static_cast<double>(t),
                   static_cast<double>(n),
                   static_cast<double>(kind),
                   static_cast<double>(rec.m),
                   static_cast<double>(rec.nasty.ledger.budget()),
                   b2d(rec.malleable),
                   b2d(ice_equal),
                   b2d(free),
                   b2d(equals_output)};
  });
  std::size_t malleable = 0, equal = 0, free = 0, equals_output = 0;
  for (const auto& row : rep.rows) {
    malleable += row[5] != 0.0;
    equal += row[5] != 0.0 && row[6] != 0.0;
    free += row[7] != 0.0;
    equals_output += row[8] != 0.0;
  }
  rep.aggregates["malleable"] = detail::frequency_json(malleable, ctx.trials);
  rep.aggregates["ice_equal"] = detail::frequency_json(equal, ctx.trials);
  rep.aggregates["contradiction_free_nasty_outputs"] = free;
  rep.aggregates["equal_to_nasty_output_when_free"] = equals_output;
  rep.verdicts.push_back(
      {"coupling_multiset_equality", equal == ctx.trials && equals_output == free,
       cat("equality on ", equal, " of ", ctx.trials, " trials; ", equals_output, " of ", free,
           " contradiction-free nasty outputs reproduced exactly")});
  return rep;
}

// ---------------------------------------------------------------------------
// ICE learner end to end

TrialReport scenario_ice_learner(const ScenarioContext& ctx) {
  IceSepParams params;
  params.w = ctx.count("w");
  params.d = ctx.count("d");
  params.eta = ctx.num("eta");
  params.kappa = ctx.num("kappa");
  params.n = ctx.count("n");
  params.finalize();
  const double success_freq = ctx.num("success_freq");
  const double l1_bound = (1.0 - 4.0 * params.tau()) * static_cast<double>(params.w);
  const KeyValueLayout& lay = params.layout;
  const DiscreteDistribution dist = DiscreteDistribution::uniform(lay.domain_size());

  TrialReport rep;
  rep.columns = {"trial",          "noiseless_recovered", "noiseless_candidates",
                 "noisy_budget",   "noisy_recovered",     "noisy_l1",
                 "counters_match", "vulnerable",          "pattern_holds",
                 "nasty_error",    "key_flip_recovered"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    auto inst = IceSepInstance::build(params, trial.child(0));
    Rng pick(trial.child(1));
    IceConcept c = IceConcept::make(inst, PrfKey::random(params.d, pick));
    Concept target = c.as_concept();
    Sample clean = draw_clean_sample(dist, target, params.n, trial.child(2));

    IceLearnOutcome plain = ice_malicious_learner(clean, inst, trial.child(3));
    bool plain_ok = !plain.failed && plain.chosen_key == c.key;

    Corrupted noisy = strong_malicious_corrupt(clean, params.eta,
                                               random_outlier_strategy(lay.domain_size()),
                                               trial.child(4));
    IceLearnOutcome low = ice_malicious_learner(noisy.sample, inst, trial.child(5));
    bool low_ok = !low.failed && low.chosen_key == c.key;
    double l1 = low.v.empty() ? NAN : l1_to_codeword(low.v, c.enc);
    bool counters = !low.v.empty() && counters_match(noisy, c, low.v);

    Corrupted nasty = nasty_corrupt(clean, params.eta, ice_idealized_nasty_strategy(c),
                                    trial.child(6));
    bool vulnerable = !nasty.ledger.exhausted;
    bool pattern = vulnerable && ice_vulnerable_pattern_holds(clean, nasty, c);
    IceLearnOutcome attacked = ice_malicious_learner(nasty.sample, inst, trial.child(7));
    double nasty_err = error_rate(attacked.hypothesis, target, dist);

    Corrupted flipped =
        strong_malicious_corrupt(clean, params.eta, key_flip_strategy(c), trial.child(8));
    IceLearnOutcome stressed = ice_malicious_learner(flipped.sample, inst, trial.child(9));
    bool flip_ok = !stressed.failed && stressed.chosen_key == c.key;

    rep.rows[t] = {static_cast<double>(t),
                   b2d(plain_ok),
                   static_cast<double>(plain.candidates),
                   static_cast<double>(noisy.ledger.budget()),
                   b2d(low_ok),
                   l1,
                   b2d(counters),
                   b2d(vulnerable),
                   b2d(pattern),
                   nasty_err,
                   b2d(flip_ok)};
  });
  std::size_t plain = 0, low = 0, counters = 0, vulnerable = 0, pattern = 0, flip = 0,
              within_l1 = 0;
  std::vector<double> l1s, nasty_errs, cands;
  for (const auto& row : rep.rows) {
    plain += row[1] != 0.0;
    cands.push_back(row[2]);
    low += row[4] != 0.0;
    l1s.push_back(row[5]);
    within_l1 += row[5] <= l1_bound;
    counters += row[6] != 0.0;
    vulnerable += row[7] != 0.0;
    pattern += row[8] != 0.0;
    nasty_errs.push_back(row[9]);
    flip += row[10] != 0.0;
  }
  const double f_plain = fraction(plain, ctx.trials);
  const double f_low = fraction(low, ctx.trials);
  rep.aggregates["params"] = Json{{"n", params.n},
                                  {"block_size", lay.block_size},
                                  {"key_mass", params.key_mass()},
                                  {"R", params.R()},
                                  {"Delta", params.Delta()},
                                  {"tau", params.tau()},
                                  {"radius", params.radius()}};
  rep.aggregates["noiseless_recovered"] = detail::frequency_json(plain, ctx.trials);
  rep.aggregates["mean_noiseless_candidates"] = stats::mean(cands);
  rep.aggregates["low_noise_recovered"] = detail::frequency_json(low, ctx.trials);
  rep.aggregates["mean_v_l1"] = stats::mean(l1s);
  rep.aggregates["max_v_l1"] = *std::max_element(l1s.begin(), l1s.end());
  rep.aggregates["v_l1_bound"] = l1_bound;
  rep.aggregates["v_l1_within_bound"] = detail::frequency_json(within_l1, ctx.trials);
  rep.aggregates["counter_identity"] = detail::frequency_json(counters, ctx.trials);
  rep.aggregates["vulnerable"] = detail::frequency_json(vulnerable, ctx.trials);
  rep.aggregates["mean_error_under_idealized_adversary"] = stats::mean(nasty_errs);
  rep.aggregates["key_flip_recovered"] = detail::frequency_json(flip, ctx.trials);
  rep.flags["exhausted"] = detail::frequency_json(ctx.trials - vulnerable, ctx.trials);
  rep.verdicts.push_back({"noiseless_recovery", f_plain >= success_freq,
                          cat("true key recovered in ", f_plain, " of trials (need ",
                              success_freq, ")")});
  rep.verdicts.push_back({"low_noise_recovery", f_low >= success_freq,
                          cat("true key recovered in ", f_low, " of trials (need ", success_freq,
                              ")")});
  rep.verdicts.push_back({"vulnerable_survivor_pattern", pattern == vulnerable,
                          cat("pattern holds on ", pattern, " of ", vulnerable,
                              " vulnerable trials")});
  rep.verdicts.push_back({"counter_identity", counters == ctx.trials,
                          cat("block-counter recomputation matches on ", counters, " of ",
                              ctx.trials, " trials")});
  return rep;
}

}  // namespace noisypac
