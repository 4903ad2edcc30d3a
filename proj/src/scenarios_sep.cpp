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
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noisypac/bench.hpp"
#include "noisypac/codes.hpp"
#include "noisypac/learn.hpp"
#include "noisypac/noise.hpp"
#include "noisypac/sep.hpp"
#include "noisypac/stats.hpp"
#include "scenario_util.hpp"

namespace noisypac {

using detail::b2d;
using detail::cat;
using detail::fraction;

namespace {

// ---------------------------------------------------------------------------
// Independent enumeration helpers for the codes suite.

std::vector<std::uint64_t> all_codewords(const GeneratorMatrix& g) {
  const std::size_t k = g.rows();
  std::vector<std::uint64_t> words(std::size_t{1} << k, 0);
  for (std::size_t m = 1; m < words.size(); ++m) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
    words[m] = words[m & (m - 1)] ^ g.row(low);
  }
  return words;
}

std::string symbol_string(std::uint64_t bits, std::size_t w) {
  std::string s(w, '+');
  for (std::size_t i = 0; i < w; ++i) {
    if ((bits >> i) & 1U) s[i] = '-';
  }
  return s;
}

ReceivedWord with_erasures(std::uint64_t word, std::uint64_t erased, std::size_t w) {
  ReceivedWord r(w);
  for (std::size_t i = 0; i < w; ++i) {
    if ((erased >> i) & 1U) {
      r[i] = Symbol::kErased;
    } else {
      r[i] = ((word >> i) & 1U) ? Symbol::kNeg : Symbol::kPos;
    }
  }
  return r;
}

std::vector<std::uint64_t> message_bits(const std::vector<Message>& ms) {
  std::vector<std::uint64_t> out;
  for (const auto& m : ms) out.push_back(m.bits);
  return out;
}

struct CodeTrial {
  std::size_t erasure_checks = 0, erasure_fail = 0;
  std::size_t bitflip_checks = 0, bitflip_fail = 0;
  std::size_t lowweight_checks = 0, lowweight_fail = 0;
  double list_size_sum = 0.0;
  std::size_t list_size_count = 0;
};

void check_erasures(const GeneratorMatrix& g, std::size_t max_erasures, CodeTrial& r) {
  const std::size_t w = g.cols();
  const std::vector<std::uint64_t> words = all_codewords(g);
  const std::size_t cap = words.size();
  for (std::uint64_t erased = 0; erased < (std::uint64_t{1} << w); ++erased) {
    const auto count = static_cast<std::size_t>(std::popcount(erased));
    if (count > max_erasures) continue;
    const std::uint64_t known = ~erased & ((std::uint64_t{1} << w) - 1);
    for (std::size_t m = 0; m < words.size(); ++m) {
      ++r.erasure_checks;
      auto got = message_bits(erasure_list_decode(g, with_erasures(words[m], erased, w), cap));
      std::vector<std::uint64_t> want;
      for (std::size_t m2 = 0; m2 < words.size(); ++m2) {
        if (((words[m2] ^ words[m]) & known) == 0) want.push_back(m2);
      }
      bool ok = got == want && std::binary_search(got.begin(), got.end(), m);
      if (!ok) ++r.erasure_fail;
      if (count == max_erasures) {
        r.list_size_sum += static_cast<double>(got.size());
        ++r.list_size_count;
      }
    }
  }
}

void check_bitflip(const GeneratorMatrix& g, CodeTrial& r) {
  const std::size_t w = g.cols();
  const std::vector<std::uint64_t> words = all_codewords(g);
  for (std::uint64_t recv = 0; recv < (std::uint64_t{1} << w); ++recv) {
    ReceivedWord rw = with_erasures(recv, 0, w);
    for (std::size_t radius = 0; radius <= w; ++radius) {
      ++r.bitflip_checks;
      auto got = message_bits(bitflip_list_decode(g, rw, radius, words.size()));
      std::vector<std::uint64_t> want;
      for (std::size_t m = 0; m < words.size(); ++m) {
        std::size_t dist = 0;
        for (std::size_t i = 0; i < w; ++i) dist += ((words[m] ^ recv) >> i) & 1U;
        if (dist <= radius) want.push_back(m);
      }
      if (got != want) ++r.bitflip_fail;
    }
  }
}

void check_low_weight(const GeneratorMatrix& g, CodeTrial& r) {
  const std::size_t w = g.cols();
  const std::vector<std::uint64_t> words = all_codewords(g);
  for (std::size_t bound = 0; bound <= w; ++bound) {
    ++r.lowweight_checks;
    std::vector<std::pair<std::string, std::uint64_t>> want;
    for (std::size_t m = 0; m < words.size(); ++m) {
      if (static_cast<std::size_t>(std::popcount(words[m])) <= bound) {
        want.emplace_back(symbol_string(words[m], w), m);
      }
    }
    // '+' sorts before '-' in ASCII, matching +1 before -1.
    std::sort(want.begin(), want.end());
    auto got = low_weight_subcode(g, bound);
    bool ok = got.size() == want.size();
    for (std::size_t i = 0; ok && i < got.size(); ++i) {
      ok = got[i].message.bits == want[i].second && got[i].word.bits() == words[want[i].second];
    }
    if (!ok || low_weight_codewords(g, bound).size() != want.size()) ++r.lowweight_fail;
  }
}

SepParams sep_params_from(const ScenarioContext& ctx) {
  SepParams p;
  p.w = ctx.count("w");
  p.d = ctx.count("d");
  p.u = ctx.count("u");
  p.ell = ctx.count("ell");
  p.eta_n = ctx.num("eta_n");
  p.eta_m = ctx.num("eta_m");
  p.rho = ctx.num("rho");
  p.tau = ctx.num("tau");
  p.kappa = ctx.num("kappa");
  p.n = ctx.count("n");
  p.finalize();
  return p;
}

Json sep_params_json(const SepParams& p) {
  return Json{{"n", p.n},
              {"k", p.message_bits()},
              {"weight_bound", p.weight_bound()},
              {"block_size", p.layout.block_size},
              {"kappa_realized", p.kappa_realized()},
              {"D", p.D()},
              {"Delta", p.Delta()}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Codes suite

TrialReport scenario_codes_suite(const ScenarioContext& ctx) {
  const std::size_t w = ctx.count("w");
  const double rho = ctx.num("rho");
  const double tau = ctx.num("tau");
  const std::size_t oracle_w = ctx.count("oracle_max_w");
  if (w > 20 || oracle_w > 12) throw std::invalid_argument("codes-suite is exhaustive; keep w small");
  const auto max_erasures =
      static_cast<std::size_t>(std::floor(tau * static_cast<double>(w) + 1e-9));
  TrialReport rep;
  rep.columns = {"trial",          "k",              "erasure_checks", "erasure_fail",
                 "bitflip_checks", "bitflip_fail",   "lowweight_checks", "lowweight_fail",
                 "mean_list_size"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    GeneratorMatrix g = gen_random_linear_code(rho, w, trial.child(0));
    CodeTrial r;
    check_erasures(g, max_erasures, r);
    check_low_weight(g, r);
    for (std::size_t ow = 4; ow <= oracle_w; ow += 2) {
      check_bitflip(gen_random_linear_code(0.5, ow, trial.child(ow)), r);
    }
    rep.rows[t] = {static_cast<double>(t),
                   static_cast<double>(g.rows()),
                   static_cast<double>(r.erasure_checks),
                   static_cast<double>(r.erasure_fail),
                   static_cast<double>(r.bitflip_checks),
                   static_cast<double>(r.bitflip_fail),
                   static_cast<double>(r.lowweight_checks),
                   static_cast<double>(r.lowweight_fail),
                   r.list_size_count ? r.list_size_sum / static_cast<double>(r.list_size_count)
                                     : 0.0};
  });
  double er_checks = 0, er_fail = 0, bf_checks = 0, bf_fail = 0, lw_checks = 0, lw_fail = 0;
  std::vector<double> lists;
  for (const auto& row : rep.rows) {
    er_checks += row[2];
    er_fail += row[3];
    bf_checks += row[4];
    bf_fail += row[5];
    lw_checks += row[6];
    lw_fail += row[7];
    lists.push_back(row[8]);
  }
  rep.aggregates["max_erasures"] = max_erasures;
  rep.aggregates["erasure_checks"] = er_checks;
  rep.aggregates["bitflip_checks"] = bf_checks;
  rep.aggregates["lowweight_checks"] = lw_checks;
  // Mean decoded list size at the maximum erasure count, a proxy for list size.
  rep.aggregates["mean_list_size_at_max_erasures"] = stats::mean(lists);
  rep.verdicts.push_back({"erasure_round_trip", er_fail == 0,
                          cat(er_fail, " of ", er_checks, " erasure decodes disagree")});
  rep.verdicts.push_back({"bitflip_matches_oracle", bf_fail == 0,
                          cat(bf_fail, " of ", bf_checks, " bit-flip decodes disagree")});
  rep.verdicts.push_back({"low_weight_enumeration", lw_fail == 0,
                          cat(lw_fail, " of ", lw_checks, " low-weight lists disagree")});
  return rep;
}

// ---------------------------------------------------------------------------
// Separation, learner side

TrialReport scenario_sep_learner(const ScenarioContext& ctx) {
  SepParams params = sep_params_from(ctx);
  params.slack = ctx.num("slack");
  const double eps = ctx.num("eps");
  const double success_freq = ctx.num("success_freq");
  const double error_bound = 4.0 * params.eta_m * params.slack + eps;
  const double erasure_bound = params.slack * params.eta_m /
                               (params.kappa_realized() * (1.0 - params.eta_m)) *
                               static_cast<double>(params.w);
  const DiscreteDistribution dist = DiscreteDistribution::uniform(params.layout.domain_size());
  TrialReport rep;
  rep.columns = {"trial",      "budget",  "erasures", "decoded",   "candidates", "failed",
                 "z_wrong",    "recovered", "error",  "success"};
  rep.rows.resize(ctx.trials);
  parallel_for(ctx.trials, [&](std::size_t t) {
    RngHandle trial = ctx.rng.child(t);
    auto inst = SepInstance::build(params, trial.child(0));
    Rng pick(trial.child(1));
    std::size_t p = static_cast<std::size_t>(pick.below(inst->subcode().size()));
    auto q = static_cast<std::uint32_t>(pick.below(inst->seed_count()));
    SepConcept c = SepConcept::make(inst, p, q);
    Concept target = c.as_concept();
    Sample clean = draw_clean_sample(dist, target, params.n, trial.child(2));
    Corrupted noisy =
        strong_malicious_corrupt(clean, params.eta_m, sep_key_erasure_strategy(c), trial.child(3));
    SepLearnOutcome out = sep_malicious_learner(noisy.sample, inst);
    std::size_t z_wrong = 0;
    for (std::size_t i = 0; i < params.w; ++i) {
      if (out.z[i] == Symbol::kErased) continue;
      Symbol truth = c.word().symbol(i) == Label::kPos ? Symbol::kPos : Symbol::kNeg;
      z_wrong += out.z[i] != truth;
    }
    double err = error_rate(out.hypothesis, target, dist);
    bool recovered = !out.failed && SepConcept::make(inst, out.chosen_p, out.chosen_q).key == c.key &&
                     out.chosen_p == p;
    rep.rows[t] = {static_cast<double>(t),
                   static_cast<double>(noisy.ledger.budget()),
                   static_cast<double>(out.erasures),
                   static_cast<double>(out.decoded),
                   static_cast<double>(out.candidates.size()),
                   b2d(out.failed),
                   static_cast<double>(z_wrong),
                   b2d(recovered),
                   err,
                   b2d(err <= error_bound)};
  });
  std::size_t success = 0, failed = 0, z_wrong = 0, recovered = 0;
  std::vector<double> erasures, candidates, errors;
  double max_erasures = 0.0;
  for (const auto& row : rep.rows) {
    success += row[9] != 0.0;
    failed += row[5] != 0.0;
    z_wrong += static_cast<std::size_t>(row[6]);
    recovered += row[7] != 0.0;
    erasures.push_back(row[2]);
    candidates.push_back(row[4]);
    errors.push_back(row[8]);
    max_erasures = std::max(max_erasures, row[2]);
  }
  const double freq = fraction(success, ctx.trials);
  rep.aggregates["params"] = sep_params_json(params);
  rep.aggregates["error_bound"] = error_bound;
  rep.aggregates["success"] = detail::frequency_json(success, ctx.trials);
  rep.aggregates["mean_error"] = stats::mean(errors);
  rep.aggregates["recovered"] = detail::frequency_json(recovered, ctx.trials);
  rep.aggregates["mean_erasures"] = stats::mean(erasures);
  rep.aggregates["max_erasures"] = max_erasures;
  rep.aggregates["erasure_bound"] = erasure_bound;
  rep.aggregates["mean_candidates"] = stats::mean(candidates);
  rep.flags["decode_failure"] = detail::frequency_json(failed, ctx.trials);
  rep.verdicts.push_back({"sep_learner_error", freq >= success_freq,
                          cat("error <= ", error_bound, " in ", freq, " of trials (need ",
                              success_freq, ")")});
  rep.verdicts.push_back({"sep_learner_z_exact", z_wrong == 0,
                          cat(z_wrong, " wrong unerased z coordinates across all trials")});
  return rep;
}

// ---------------------------------------------------------------------------
// Separation, adversary side

TrialReport scenario_sep_adversary(const ScenarioContext& ctx) {
  SepParams params = sep_params_from(ctx);
  const double sig = ctx.num("significance");
  const double clean_freq = ctx.num("clean_freq");
  const KeyValueLayout& lay = params.layout;
  auto inst = SepInstance::build(params, ctx.rng.child(0));
  const auto& sub = inst->subcode();
  std::size_t p_plain = sub.size(), p_heavy = 0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (sub[i].word.weight() == 0 && p_plain == sub.size()) p_plain = i;
    if (sub[i].word.weight() > sub[p_heavy].word.weight()) p_heavy = i;
  }
  if (p_plain == sub.size()) throw std::logic_error("subcode lacks the all-+1 word");
  const DiscreteDistribution dist = DiscreteDistribution::uniform(lay.domain_size());
  const std::size_t n = params.n;
  const std::size_t cells = lay.w + 2;  // key blocks, value +1, value -1

  struct TrialOut {
    std::vector<double> row;
    std::vector<std::uint32_t> key_points;
    std::vector<double> real_cells, sim_cells;
  };
  const std::array<std::size_t, 2> ps{p_plain, p_heavy};
  std::vector<TrialOut> outs(2 * ctx.trials);
  parallel_for(outs.size(), [&](std::size_t idx) {
    const std::size_t side = idx / ctx.trials, t = idx % ctx.trials;
    RngHandle trial = ctx.rng.child(1 + side).child(t);
    Rng pick(trial.child(0));
    auto q = static_cast<std::uint32_t>(pick.below(inst->seed_count()));
    SepConcept c = SepConcept::make(inst, ps[side], q);
    Concept target = c.as_concept();
    Sample clean = draw_clean_sample(dist, target, n, trial.child(1));
    Corrupted nasty = nasty_corrupt(clean, params.eta_n, sep_nasty_strategy(c), trial.child(2));
    TrialOut& o = outs[idx];
    o.real_cells.assign(cells, 0.0);
    o.sim_cells.assign(cells, 0.0);
    auto tally = [&](const Example& e, std::vector<double>& into) {
      if (lay.is_key(e.point)) {
        into[lay.block_of(e.point)] += 1.0;
      } else {
        into[lay.w + (e.label == Label::kPos ? 0 : 1)] += 1.0;
      }
    };
    bool all_pos = true;
    std::size_t key_count = 0;
    for (const auto& e : nasty.sample) {
      tally(e, o.real_cells);
      if (!lay.is_key(e.point)) continue;
      ++key_count;
      all_pos = all_pos && e.label == Label::kPos;
      o.key_points.push_back(static_cast<std::uint32_t>(e.point));
    }
    Sample sim = sep_simulate_T_nasty(sep_value_sample(c, n, trial.child(3)), *inst, n,
                                      trial.child(4));
    std::size_t sim_key = 0;
    for (const auto& e : sim) {
      tally(e, o.sim_cells);
      sim_key += lay.is_key(e.point);
    }
    o.row = {static_cast<double>(side + 1),
             static_cast<double>(t),
             static_cast<double>(nasty.ledger.budget()),
             b2d(nasty.ledger.exhausted),
             static_cast<double>(key_count),
             b2d(all_pos),
             static_cast<double>(sim_key)};
  });

  TrialReport rep;
  rep.columns = {"word", "trial", "budget", "exhausted", "key_count", "key_all_pos",
                 "sim_key_count"};
  std::array<std::vector<double>, 2> point_hist, block_hist;
  std::vector<double> real_cells(cells, 0.0), sim_cells(cells, 0.0);
  std::vector<double> real_keys(n + 1, 0.0), sim_keys(n + 1, 0.0);
  std::array<std::size_t, 2> clean_trials{0, 0}, exhausted{0, 0};
  for (std::size_t side = 0; side < 2; ++side) {
    point_hist[side].assign(lay.key_size(), 0.0);
    block_hist[side].assign(lay.w, 0.0);
  }
  for (std::size_t idx = 0; idx < outs.size(); ++idx) {
    const std::size_t side = idx / ctx.trials;
    const TrialOut& o = outs[idx];
    rep.rows.push_back(o.row);
    bool ex = o.row[3] != 0.0;
    exhausted[side] += ex;
    if (!ex && o.row[5] != 0.0) ++clean_trials[side];
    for (std::size_t i = 0; i < cells; ++i) {
      real_cells[i] += o.real_cells[i];
      sim_cells[i] += o.sim_cells[i];
    }
    real_keys[static_cast<std::size_t>(o.row[4])] += 1.0;
    sim_keys[static_cast<std::size_t>(o.row[6])] += 1.0;
    if (ex) continue;
    for (auto x : o.key_points) {
      point_hist[side][x] += 1.0;
      block_hist[side][lay.block_of(x)] += 1.0;
    }
  }
  stats::ChiSquare chi_points = stats::chi_square_two_sample(point_hist[0], point_hist[1]);
  stats::ChiSquare chi_blocks = stats::chi_square_two_sample(block_hist[0], block_hist[1]);
  stats::ChiSquare chi_cells = stats::chi_square_two_sample(real_cells, sim_cells);
  stats::ChiSquare chi_keys = stats::chi_square_two_sample(real_keys, sim_keys);
  const double f1 = fraction(clean_trials[0], ctx.trials);
  const double f2 = fraction(clean_trials[1], ctx.trials);

  rep.aggregates["params"] = sep_params_json(params);
  rep.aggregates["subcode_size"] = sub.size();
  rep.aggregates["heavy_word_weight"] = sub[p_heavy].word.weight();
  rep.aggregates["clean_key_side_plain"] = detail::frequency_json(clean_trials[0], ctx.trials);
  rep.aggregates["clean_key_side_heavy"] = detail::frequency_json(clean_trials[1], ctx.trials);
  rep.aggregates["key_points_chi_square"] = detail::chi_json(chi_points);
  rep.aggregates["key_blocks_chi_square"] = detail::chi_json(chi_blocks);
  rep.aggregates["simulation_cells_chi_square"] = detail::chi_json(chi_cells);
  rep.aggregates["simulation_key_count_chi_square"] = detail::chi_json(chi_keys);
  rep.flags["exhausted_plain"] = detail::frequency_json(exhausted[0], ctx.trials);
  rep.flags["exhausted_heavy"] = detail::frequency_json(exhausted[1], ctx.trials);
  rep.verdicts.push_back({"key_side_all_positive", f1 >= clean_freq && f2 >= clean_freq,
                          cat("non-exhausted all-+1 key side in ", f1, " and ", f2,
                              " of trials (need ", clean_freq, ")")});
  rep.verdicts.push_back({"key_side_independent_of_word",
                          chi_points.passes(sig) && chi_blocks.passes(sig),
                          cat("two-sample p-values: points ", chi_points.p_value, ", blocks ",
                              chi_blocks.p_value)});
  rep.verdicts.push_back({"simulation_matches_nasty_sample",
                          chi_cells.passes(sig) && chi_keys.passes(sig),
                          cat("two-sample p-values: cells ", chi_cells.p_value,
                              ", key counts ", chi_keys.p_value)});
  return rep;
}

}  // namespace noisypac
