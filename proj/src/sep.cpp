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

#include "noisypac/sep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "noisypac/learn.hpp"
#include "noisypac/stats.hpp"

namespace noisypac {

// ---------------------------------------------------------------------------
// Parameters

SepParams SepParams::from_ratio(double r, std::size_t w, std::size_t d, std::size_t u,
                                std::size_t ell) {
  if (!(r > 1.0)) throw std::invalid_argument("ratio r must exceed 1");
  SepParams p;
  p.r = r;
  p.w = w;
  p.d = d;
  p.u = u;
  p.ell = ell;
  p.eta_n = std::exp2(-8.0 * r);
  double h = stats::binary_entropy(p.eta_n);
  p.eta_m = h / (h + 2.0);
  CodeParams cp = CodeParams::derive(p.eta_n, p.eta_m);
  std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(cp.rho * static_cast<double>(w))));
  p.rho = static_cast<double>(k) / static_cast<double>(w);
  p.tau = cp.tau;
  p.kappa = 0.998 * p.eta_m / ((1.0 - p.eta_m) * p.tau) + 0.002;
  return p;
}

std::size_t SepParams::message_bits() const {
  return static_cast<std::size_t>(std::llround(rho * static_cast<double>(w)));
}

std::size_t SepParams::weight_bound() const {
  return static_cast<std::size_t>(std::floor(eta_n * static_cast<double>(w) + 1e-9));
}

double SepParams::D() const {
  return (1.0 - eta_m) * kappa_realized() * static_cast<double>(n) / static_cast<double>(w);
}

double SepParams::Delta() const { return std::pow(static_cast<double>(n), 0.51); }

void SepParams::validate() const {
  if (w == 0 || w > 64) throw std::invalid_argument("w must lie in [1, 64]");
  if (d == 0 || d > 30) throw std::invalid_argument("d must lie in [1, 30]");
  if (u > 16) throw std::invalid_argument("u must be at most 16");
  if (ell == 0 || ell > w || ell > PrfKey::kMaxBits) throw std::invalid_argument("bad ell");
  if (!(eta_n > 0.0 && eta_n < 0.5)) throw std::invalid_argument("eta_N must lie in (0, 1/2)");
  if (!(eta_m > 0.0 && eta_m < 1.0)) throw std::invalid_argument("eta_M must lie in (0, 1)");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0, 1)");
  std::size_t k = message_bits();
  if (k == 0 || k > 24 || std::abs(rho * static_cast<double>(w) - static_cast<double>(k)) > 1e-9) {
    throw std::invalid_argument("rho * w must be an integer in [1, 24]");
  }
  double lo = eta_m / ((1.0 - eta_m) * tau);
  if (!(lo < kappa && kappa < 1.0)) {
    throw std::invalid_argument("need eta_M / ((1 - eta_M) tau) < kappa < 1");
  }
  if (!(lo < kappa_realized() && kappa_realized() < 1.0)) {
    throw std::invalid_argument("realized key-side mass violates the kappa constraint");
  }
  if (n == 0) throw std::invalid_argument("sample size not set");
}

std::size_t sep_auto_sample_size(const SepParams& p) {
  SepParams q = p;
  for (std::size_t n = 1024; n <= (std::size_t{1} << 26); n *= 2) {
    q.n = n;
    if (q.Delta() <= p.delta_ratio * q.D()) return n;
  }
  throw std::invalid_argument("no desk-scale sample size satisfies the slack target");
}

void SepParams::finalize() {
  layout = KeyValueLayout::for_key_fraction(w, d, kappa);
  if (n == 0) n = sep_auto_sample_size(*this);
  validate();
}

// ---------------------------------------------------------------------------
// Instance and concepts

SepInstance::SepInstance(SepParams params, GeneratorMatrix code)
    : params_(std::move(params)), code_(std::move(code)) {
  if (code_.cols() != params_.w || code_.rows() != params_.message_bits()) {
    throw std::invalid_argument("code shape does not match the parameters");
  }
  subcode_ = low_weight_subcode(code_, params_.weight_bound());
  extractor_ = ExtractorSpec{params_.w, params_.u, params_.ell};
  extractor_.validate();
}

std::shared_ptr<const SepInstance> SepInstance::build(SepParams params, RngHandle rng) {
  if (params.layout.w == 0) params.finalize();
  GeneratorMatrix g = gen_random_linear_code(params.rho, params.w, rng);
  return build(std::move(params), std::move(g));
}

std::shared_ptr<const SepInstance> SepInstance::build(SepParams params, GeneratorMatrix code) {
  if (params.layout.w == 0) params.finalize();
  return std::shared_ptr<const SepInstance>(new SepInstance(std::move(params), std::move(code)));
}

PrfKey SepInstance::derived_key(std::size_t p, std::uint32_t q) const {
  const Codeword& wp = subcode_.at(p).word;
  BitString k = extract(BitString{wp.bits(), wp.length()}, q, extractor_);
  return PrfKey::from_bits(k);
}

long SepInstance::subcode_index(const Message& m) const {
  for (std::size_t p = 0; p < subcode_.size(); ++p) {
    if (subcode_[p].message == m) return static_cast<long>(p);
  }
  return -1;
}

SepConcept SepConcept::make(std::shared_ptr<const SepInstance> instance, std::size_t p,
                            std::uint32_t q) {
  if (p >= instance->subcode().size()) throw std::invalid_argument("p outside the subcode");
  if (q >= instance->seed_count()) throw std::invalid_argument("q wider than u bits");
  SepConcept c;
  c.key = instance->derived_key(p, q);
  c.instance = std::move(instance);
  c.p = p;
  c.q = q;
  return c;
}

Label sep_concept_eval(const SepConcept& c, Point x) {
  const KeyValueLayout& lay = c.instance->params().layout;
  if (lay.is_key(x)) return c.word().symbol(lay.block_of(x));
  return prf_eval(c.key, lay.value_offset(x));
}

Concept SepConcept::as_concept() const {
  SepConcept self = *this;
  return Concept(instance->params().layout.domain_size(),
                 [self](Point x) { return sep_concept_eval(self, x); });
}

Hypothesis SepConcept::as_hypothesis() const { return Hypothesis::from_concept(as_concept()); }

// ---------------------------------------------------------------------------
// Adversaries

AdversaryStrategy sep_nasty_strategy(const SepConcept& c) {
  return [c](const AdversaryView& view, Rng&) {
    const KeyValueLayout& lay = c.instance->params().layout;
    StrategyOutcome out;
    for (std::size_t i = 0; i < view.clean.size(); ++i) {
      const Example& e = view.clean[i];
      if (!lay.is_key(e.point) || c.word().symbol(lay.block_of(e.point)) != Label::kNeg) continue;
      if (out.replacements.size() == view.budget) {
        out.exhausted = true;
        break;
      }
      out.replacements.push_back({i, Example{e.point, Label::kPos}});
    }
    return out;
  };
}

AdversaryStrategy sep_key_erasure_strategy(const SepConcept& c, std::size_t max_blocks) {
  return [c, max_blocks](const AdversaryView& view, Rng& rng) {
    const SepParams& p = c.instance->params();
    const KeyValueLayout& lay = p.layout;
    SepParams sized = p;
    sized.n = view.clean.size();
    auto batch = static_cast<std::size_t>(std::max(1.0, std::ceil(sized.D() - sized.Delta())));
    std::vector<std::size_t> slots(view.allowed.begin(), view.allowed.end());
    if (slots.empty()) {
      slots.resize(std::min(view.budget, view.clean.size()));
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    }
    std::vector<std::size_t> blocks = uniform_permutation(p.w, rng);
    StrategyOutcome out;
    std::size_t used = 0, erased = 0;
    for (std::size_t j : blocks) {
      if (erased >= max_blocks || slots.size() - used < batch) break;
      Label wrong = negate(c.word().symbol(j));
      for (std::size_t t = 0; t < batch; ++t) {
        Point x = lay.block_begin(j) + rng.below(lay.block_size);
        out.replacements.push_back({slots[used++], Example{x, wrong}});
      }
      ++erased;
    }
    while (used < slots.size()) {
      Point x = lay.value_point(rng.below(lay.value_size()));
      out.replacements.push_back({slots[used++], Example{x, negate(sep_concept_eval(c, x))}});
    }
    return out;
  };
}

// ---------------------------------------------------------------------------
// Learner

SepLearnOutcome sep_malicious_learner(const Sample& s,
                                      const std::shared_ptr<const SepInstance>& instance) {
  const SepParams& p = instance->params();
  if (s.size() != p.n) throw std::invalid_argument("sep learner expects exactly n examples");
  const KeyValueLayout& lay = p.layout;
  SepLearnOutcome out;

  std::vector<std::size_t> plus(p.w, 0), minus(p.w, 0);
  for (const auto& e : s) {
    if (!lay.is_key(e.point)) continue;
    (e.label == Label::kPos ? plus : minus)[lay.block_of(e.point)] += 1;
  }
  const double threshold = p.D() - p.Delta();
  out.z.assign(p.w, Symbol::kErased);
  for (std::size_t i = 0; i < p.w; ++i) {
    auto sp = static_cast<double>(plus[i]);
    auto sm = static_cast<double>(minus[i]);
    if (sm < threshold && threshold <= sp) {
      out.z[i] = Symbol::kPos;
    } else if (sp < threshold && threshold <= sm) {
      out.z[i] = Symbol::kNeg;
    } else {
      ++out.erasures;
    }
  }

  std::vector<Message> decoded;
  try {
    decoded = erasure_list_decode(instance->code(), out.z, p.list_cap);
  } catch (const ListCapExceeded&) {
    out.failed = true;
    out.failure = "decode list exceeded cap";
    return out;
  }
  out.decoded = decoded.size();
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  for (std::size_t i = 0; i < instance->subcode().size(); ++i) {
    index_of.emplace(instance->subcode()[i].message.bits, i);
  }
  for (const auto& m : decoded) {
    auto it = index_of.find(m.bits);
    if (it != index_of.end()) out.candidates.push_back(it->second);
  }
  std::sort(out.candidates.begin(), out.candidates.end());
  if (out.candidates.empty()) {
    out.failed = true;
    out.failure = "no low-weight candidate";
    return out;
  }

  std::vector<Hypothesis> hyps;
  std::vector<std::pair<std::size_t, std::uint32_t>> labels;
  for (std::size_t cand : out.candidates) {
    for (std::uint32_t q = 0; q < instance->seed_count(); ++q) {
      hyps.push_back(SepConcept::make(instance, cand, q).as_hypothesis());
      labels.emplace_back(cand, q);
    }
  }
  Selection sel = select_best_hypothesis(hyps, s);
  out.hypothesis = sel.hypothesis;
  out.chosen_p = labels[sel.index].first;
  out.chosen_q = labels[sel.index].second;
  return out;
}

Sample sep_value_sample(const SepConcept& c, std::size_t m, RngHandle rng) {
  const KeyValueLayout& lay = c.instance->params().layout;
  Rng gen(rng);
  Sample t;
  t.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Point x = lay.value_point(gen.below(lay.value_size()));
    t.push_back(Example{x, sep_concept_eval(c, x)});
  }
  return t;
}

Sample sep_simulate_T_nasty(const Sample& t_value, const SepInstance& instance, std::size_t n,
                            RngHandle rng) {
  const KeyValueLayout& lay = instance.params().layout;
  const double kappa = lay.key_fraction();
  Rng gen(rng);
  Sample out;
  out.reserve(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (gen.uniform01() < kappa) {
      std::size_t j = static_cast<std::size_t>(gen.below(lay.w));
      out.push_back(Example{lay.block_begin(j) + gen.below(lay.block_size), Label::kPos});
    } else {
      if (next == t_value.size()) throw std::invalid_argument("value-side sample exhausted");
      out.push_back(t_value[next++]);
    }
  }
  return out;
}

}  // namespace noisypac
