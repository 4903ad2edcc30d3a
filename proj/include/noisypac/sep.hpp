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
#include <memory>
#include <string>
#include <vector>

#include "noisypac/codes.hpp"
#include "noisypac/core.hpp"
#include "noisypac/cryptoprim.hpp"
#include "noisypac/noise.hpp"

namespace noisypac {

// Parameters of the key/value concept class separating nasty from malicious
// noise. The symbol kappa here is the key-side mass of this construction; it
// is unrelated to the kappa of the ICE construction in icesep.hpp.
struct SepParams {
  double r = 0.0;  // nonzero when the rates were derived from a ratio
  double eta_n = 0.25;
  double eta_m = 0.1;
  double rho = 0.5;
  double tau = 0.4;
  double kappa = 0.5;
  std::size_t w = 24;
  std::size_t d = 12;
  std::size_t u = 8;
  std::size_t ell = 12;  // PRF key bits, the extractor output length
  std::size_t n = 0;     // 0 selects auto-sizing in finalize()
  std::size_t list_cap = 64;
  double slack = 1.25;
  // Auto-sizing picks the smallest power of two n with Delta <= ratio * D.
  double delta_ratio = 0.15;
  KeyValueLayout layout;

  // eta_N = 2^{-8r}, eta_M = H(eta_N) / (H(eta_N) + 2), code constants from
  // CodeParams::derive and kappa = 0.998 eta_M / ((1 - eta_M) tau) + 0.002.
  // The message length is floor(rho w), at least 1.
  static SepParams from_ratio(double r, std::size_t w, std::size_t d, std::size_t u,
                              std::size_t ell);

  // Fills the layout and n, then validates.
  void finalize();
  void validate() const;

  std::size_t message_bits() const;
  std::size_t weight_bound() const;
  double kappa_realized() const { return layout.key_fraction(); }
  double D() const;
  double Delta() const;
};

std::size_t sep_auto_sample_size(const SepParams& p);

class SepInstance {
 public:
  static std::shared_ptr<const SepInstance> build(SepParams params, RngHandle rng);
  static std::shared_ptr<const SepInstance> build(SepParams params, GeneratorMatrix code);

  const SepParams& params() const { return params_; }
  const GeneratorMatrix& code() const { return code_; }
  const std::vector<IndexedCodeword>& subcode() const { return subcode_; }
  const ExtractorSpec& extractor() const { return extractor_; }
  std::size_t seed_count() const { return extractor_.seed_count(); }

  PrfKey derived_key(std::size_t p, std::uint32_t q) const;
  // Index p of a message in the low-weight subcode, or -1.
  long subcode_index(const Message& m) const;

 private:
  SepInstance(SepParams params, GeneratorMatrix code);

  SepParams params_;
  GeneratorMatrix code_;
  std::vector<IndexedCodeword> subcode_;
  ExtractorSpec extractor_;
};

struct SepConcept {
  std::shared_ptr<const SepInstance> instance;
  std::size_t p = 0;
  std::uint32_t q = 0;
  PrfKey key;

  static SepConcept make(std::shared_ptr<const SepInstance> instance, std::size_t p,
                         std::uint32_t q);
  const Codeword& word() const { return instance->subcode()[p].word; }
  Concept as_concept() const;
  Hypothesis as_hypothesis() const;
};

Label sep_concept_eval(const SepConcept& c, Point x);

// Flips every example in the blocks whose codeword symbol is -1.
AdversaryStrategy sep_nasty_strategy(const SepConcept& c);

// Strong malicious adversary that spends Z on contradicting key blocks, a
// ceil(D - Delta) batch per block, erasing up to max_blocks blocks. The rest
// of Z carries mislabeled value-side points.
AdversaryStrategy sep_key_erasure_strategy(const SepConcept& c,
                                           std::size_t max_blocks = static_cast<std::size_t>(-1));

struct SepLearnOutcome {
  Hypothesis hypothesis = Hypothesis::constant(Label::kPos);
  bool failed = false;
  std::string failure;
  ReceivedWord z;
  std::size_t erasures = 0;
  std::size_t decoded = 0;
  std::vector<std::size_t> candidates;  // subcode indices
  std::size_t chosen_p = 0;
  std::uint32_t chosen_q = 0;
};

SepLearnOutcome sep_malicious_learner(const Sample& s,
                                      const std::shared_ptr<const SepInstance>& instance);

// Uniform value-side examples labeled by c.
Sample sep_value_sample(const SepConcept& c, std::size_t m, RngHandle rng);

Sample sep_simulate_T_nasty(const Sample& t_value, const SepInstance& instance, std::size_t n,
                            RngHandle rng);

}  // namespace noisypac
