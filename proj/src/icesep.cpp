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

#include "noisypac/icesep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "noisypac/learn.hpp"

namespace noisypac {

// ---------------------------------------------------------------------------
// Parameters

double IceSepParams::R() const {
  return key_mass() * static_cast<double>(n) / static_cast<double>(w);
}

double IceSepParams::Delta() const { return std::pow(static_cast<double>(n), 0.51); }

std::size_t IceSepParams::radius() const {
  return static_cast<std::size_t>(std::floor((0.5 - tau()) * static_cast<double>(w) + 1e-9));
}

std::size_t IceSepParams::default_sample_size() const {
  auto by_rate = static_cast<std::size_t>(std::ceil(50.0 * static_cast<double>(w) / eta));
  double per_block = key_mass() / static_cast<double>(w);
  auto by_slack = static_cast<std::size_t>(std::ceil(std::pow(1.0 / per_block, 1.0 / 0.49)));
  return std::max(by_rate, by_slack);
}

void IceSepParams::finalize() {
  layout = KeyValueLayout::for_key_fraction(w, d, 2.0 * kappa_prime() * eta);
  if (n == 0) n = default_sample_size();
  validate();
}

void IceSepParams::validate() const {
  if (!(eta > 0.0 && eta <= 0.1)) throw std::invalid_argument("eta must lie in (0, 0.1]");
  if (!(kappa > 0.5 && kappa < 1.0)) throw std::invalid_argument("kappa must lie in (1/2, 1)");
  if (w == 0 || w > 64) throw std::invalid_argument("w must lie in [1, 64]");
  if (d == 0 || d > 24 || d > w) throw std::invalid_argument("d must lie in [1, min(24, w)]");
  if (list_cap == 0) throw std::invalid_argument("list cap must be positive");
  if (layout.w != w) throw std::invalid_argument("layout not finalized");
  if (n == 0) throw std::invalid_argument("sample size not set");
}

// ---------------------------------------------------------------------------
// Instance and concepts

IceSepInstance::IceSepInstance(IceSepParams params, GeneratorMatrix code)
    : params_(std::move(params)), code_(std::move(code)) {
  if (code_.rows() != params_.d || code_.cols() != params_.w) {
    throw std::invalid_argument("code shape does not match (d, w)");
  }
}

std::shared_ptr<const IceSepInstance> IceSepInstance::build(IceSepParams params, RngHandle rng) {
  if (params.layout.w == 0) params.finalize();
  double rho = static_cast<double>(params.d) / static_cast<double>(params.w);
  GeneratorMatrix g = gen_random_linear_code(rho, params.w, rng);
  return build(std::move(params), std::move(g));
}

std::shared_ptr<const IceSepInstance> IceSepInstance::build(IceSepParams params,
                                                            GeneratorMatrix code) {
  if (params.layout.w == 0) params.finalize();
  return std::shared_ptr<const IceSepInstance>(
      new IceSepInstance(std::move(params), std::move(code)));
}

IceConcept IceConcept::make(std::shared_ptr<const IceSepInstance> instance, PrfKey key) {
  if (key.length() != instance->params().d) throw std::invalid_argument("key length must be d");
  IceConcept c;
  c.enc = encode(instance->code(), key.as_bits());
  c.key = key;
  c.instance = std::move(instance);
  return c;
}

Label ice_concept_eval(const IceConcept& c, Point x) {
  const KeyValueLayout& lay = c.instance->params().layout;
  if (lay.is_key(x)) return c.enc.symbol(lay.block_of(x));
  return prf_eval(c.key, lay.value_offset(x));
}

Concept IceConcept::as_concept() const {
  IceConcept self = *this;
  return Concept(instance->params().layout.domain_size(),
                 [self](Point x) { return ice_concept_eval(self, x); });
}

Hypothesis IceConcept::as_hypothesis() const { return Hypothesis::from_concept(as_concept()); }

// ---------------------------------------------------------------------------
// KeyBitGuess, Round, learner

double key_bit_guess(const Sample& block_examples, double r, double eta) {
  double denom = r * (1.0 - eta);
  if (!(denom != 0.0)) throw std::invalid_argument("key_bit_guess: R (1 - eta) is zero");
  long diff = 0;
  for (const auto& e : block_examples) diff += to_int(e.label);
  return static_cast<double>(diff) / denom;
}

std::vector<Label> round_vector(std::span<const double> v, RngHandle rng) {
  Rng gen(rng);
  std::vector<Label> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 1.0) {
      out[i] = Label::kPos;
    } else if (v[i] < -1.0) {
      out[i] = Label::kNeg;
    } else {
      out[i] = gen.uniform01() < (1.0 + v[i]) / 2.0 ? Label::kPos : Label::kNeg;
    }
  }
  return out;
}

IceLearnOutcome ice_malicious_learner(const Sample& s,
                                      const std::shared_ptr<const IceSepInstance>& instance,
                                      RngHandle rng) {
  const IceSepParams& p = instance->params();
  if (s.size() != p.n) throw std::invalid_argument("ICE learner expects exactly n examples");
  const KeyValueLayout& lay = p.layout;
  IceLearnOutcome out;
  out.filtered = ice_filter(s);
  if (out.filtered.empty()) {
    out.failed = true;
    out.failure = "sample empty after ICE";
    return out;
  }
  std::vector<Sample> blocks(p.w);
  for (const auto& e : out.filtered) {
    if (lay.is_key(e.point)) blocks[lay.block_of(e.point)].push_back(e);
  }
  out.v.resize(p.w);
  for (std::size_t i = 0; i < p.w; ++i) out.v[i] = key_bit_guess(blocks[i], p.R(), p.eta);
  out.z = round_vector(out.v, rng.child(0));

  std::vector<Message> list;
  try {
    list = bitflip_list_decode(instance->code(), received_from(Codeword::from_labels(out.z)),
                               p.radius(), p.list_cap);
  } catch (const ListCapExceeded&) {
    out.failed = true;
    out.failure = "decode list exceeded cap";
    return out;
  }
  out.candidates = list.size();
  if (list.empty()) {
    out.failed = true;
    out.failure = "empty decode list";
    return out;
  }
  std::vector<Hypothesis> hyps;
  std::vector<PrfKey> keys;
  for (const auto& m : list) {
    keys.push_back(PrfKey::from_bits(m));
    hyps.push_back(IceConcept::make(instance, keys.back()).as_hypothesis());
  }
  Selection sel = select_best_hypothesis(hyps, out.filtered);
  out.hypothesis = sel.hypothesis;
  out.chosen_key = keys[sel.index];
  return out;
}

// ---------------------------------------------------------------------------
// Idealized nasty adversary

AdversaryStrategy ice_idealized_nasty_strategy(const IceConcept& c) {
  return [c](const AdversaryView& view, Rng& rng) {
    const KeyValueLayout& lay = c.instance->params().layout;
    std::vector<std::vector<std::size_t>> members(lay.w);
    for (std::size_t i = 0; i < view.clean.size(); ++i) {
      if (lay.is_key(view.clean[i].point)) members[lay.block_of(view.clean[i].point)].push_back(i);
    }
    StrategyOutcome out;
    std::size_t left = view.budget;
    for (std::size_t j = 0; j < lay.w; ++j) {
      const auto& sj = members[j];
      const std::size_t size = sj.size();
      const std::size_t need = (size + 1) / 2;
      if (need > left) {
        out.exhausted = true;
        break;
      }
      left -= need;
      const Label b = c.enc.symbol(j);
      const std::size_t half = size / 2;
      const std::size_t offset = need;  // partner of position t is t + ceil(size/2)
      for (std::size_t t = 0; t < half; ++t) {
        Point partner = view.clean[sj[t + offset]].point;
        out.replacements.push_back({sj[t], Example{partner, negate(b)}});
      }
      if (size % 2 == 1) {
        Point x = lay.value_point(rng.below(lay.value_size()));
        out.replacements.push_back({sj[half], Example{x, ice_concept_eval(c, x)}});
      }
    }
    return out;
  };
}

bool ice_vulnerable_pattern_holds(const Sample& clean, const Corrupted& nasty,
                                  const IceConcept& c) {
  const KeyValueLayout& lay = c.instance->params().layout;
  Sample filtered = ice_filter(nasty.sample);
  Sample got_value, want_value;
  for (const auto& e : filtered) {
    if (lay.is_key(e.point)) return false;
    got_value.push_back(e);
  }
  std::unordered_set<std::size_t> touched(nasty.ledger.corrupted_indices.begin(),
                                          nasty.ledger.corrupted_indices.end());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (!touched.count(i) && !lay.is_key(clean[i].point)) want_value.push_back(clean[i]);
  }
  for (const auto& e : nasty.ledger.introduced) {
    if (!lay.is_key(e.point)) want_value.push_back(e);
  }
  return as_multiset(got_value) == as_multiset(want_value);
}

// ---------------------------------------------------------------------------
// Coupling

AdversaryStrategy nasty_via_strong_malicious(AdversaryStrategy nasty, double eta_nasty,
                                             Point filler, CouplingRecord* record) {
  check_rate(eta_nasty);
  return [nasty = std::move(nasty), eta_nasty, filler, record](const AdversaryView& view,
                                                                Rng& rng) {
    const std::size_t m = view.allowed.size();
    const std::size_t pairs = m / 2;
    std::vector<std::size_t> used(view.allowed.begin(),
                                  view.allowed.begin() + static_cast<std::ptrdiff_t>(2 * pairs));
    Sample input;
    input.reserve(view.clean.size() - used.size());
    for (std::size_t i = 0, u = 0; i < view.clean.size(); ++i) {
      if (u < used.size() && used[u] == i) {
        ++u;
        continue;
      }
      input.push_back(view.clean[i]);
    }
    RngHandle inner{rng.next(), rng.next()};
    Corrupted inner_out = nasty_corrupt(input, eta_nasty, nasty, inner);
    const std::size_t k = inner_out.ledger.budget();

    StrategyOutcome out;
    if (record) {
      record->m = m;
      record->malleable = k <= pairs;
      record->nasty_input = input;
      record->nasty = inner_out;
    }
    if (k > pairs) {
      out.exhausted = true;
      return out;
    }
    std::size_t slot = 0;
    for (const auto& e : inner_out.ledger.replaced) {
      out.replacements.push_back({used[slot++], Example{e.point, negate(e.label)}});
    }
    for (const auto& e : inner_out.ledger.introduced) {
      out.replacements.push_back({used[slot++], e});
    }
    while (slot < used.size()) {
      out.replacements.push_back({used[slot++], Example{filler, Label::kPos}});
      out.replacements.push_back({used[slot++], Example{filler, Label::kNeg}});
    }
    return out;
  };
}

// ---------------------------------------------------------------------------
// Block counters

BlockCounters block_counters(const Corrupted& corrupted, const IceConcept& c) {
  const KeyValueLayout& lay = c.instance->params().layout;
  const std::size_t w = lay.w;
  BlockCounters bc;
  for (auto* v : {&bc.alpha, &bc.beta, &bc.gamma, &bc.delta, &bc.alpha_prime, &bc.beta_prime}) {
    v->assign(w, 0);
  }
  const Sample& s = corrupted.sample;
  std::vector<char> is_new(s.size(), 0);
  for (std::size_t i : corrupted.ledger.corrupted_indices) is_new[i] = 1;

  struct PointCounts {
    long orig = 0, new_correct = 0, new_wrong = 0;
  };
  std::map<Point, PointCounts> per_point;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Example& e = s[i];
    if (!lay.is_key(e.point)) continue;
    std::size_t j = lay.block_of(e.point);
    bool correct = e.label == c.enc.symbol(j);
    PointCounts& pc = per_point[e.point];
    if (!is_new[i]) {
      ++bc.alpha[j];
      ++pc.orig;
    } else if (correct) {
      ++bc.beta[j];
      ++pc.new_correct;
    } else {
      ++pc.new_wrong;
    }
  }
  for (const auto& [x, pc] : per_point) {
    std::size_t j = lay.block_of(x);
    long cancelled = std::min(pc.orig + pc.new_correct, pc.new_wrong);
    bc.gamma[j] += cancelled;
    bc.delta[j] += pc.new_wrong - cancelled;
  }
  for (std::size_t i : ice_survivors(s)) {
    const Example& e = s[i];
    if (!lay.is_key(e.point)) continue;
    std::size_t j = lay.block_of(e.point);
    if (e.label != c.enc.symbol(j)) continue;
    ++(is_new[i] ? bc.beta_prime : bc.alpha_prime)[j];
  }
  return bc;
}

}  // namespace noisypac
