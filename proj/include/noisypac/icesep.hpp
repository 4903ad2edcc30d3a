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
#include <span>
#include <string>
#include <vector>

#include "noisypac/codes.hpp"
#include "noisypac/core.hpp"
#include "noisypac/cryptoprim.hpp"
#include "noisypac/noise.hpp"

namespace noisypac {

struct IceSepParams {
  double eta = 0.05;
  double kappa = 0.7;
  std::size_t w = 20;
  std::size_t d = 10;
  std::size_t n = 0;  // 0 selects default_sample_size() in finalize()
  std::size_t list_cap = 1024;
  double slack = 1.25;
  KeyValueLayout layout;

  double kappa_prime() const { return (kappa + 0.5) / 2.0; }
  double tau() const { return (kappa - 0.5) / 8.0; }
  // Realized key-side mass; the nominal value is 2 kappa' eta.
  double key_mass() const { return layout.key_fraction(); }
  // Expected examples per block, R = key_mass n / w.
  double R() const;
  double Delta() const;
  std::size_t radius() const;

  // max(50 w / eta, smallest n with n^0.51 <= R(n)).
  std::size_t default_sample_size() const;
  void finalize();
  void validate() const;
};

class IceSepInstance {
 public:
  static std::shared_ptr<const IceSepInstance> build(IceSepParams params, RngHandle rng);
  static std::shared_ptr<const IceSepInstance> build(IceSepParams params, GeneratorMatrix code);

  const IceSepParams& params() const { return params_; }
  const GeneratorMatrix& code() const { return code_; }

 private:
  IceSepInstance(IceSepParams params, GeneratorMatrix code);

  IceSepParams params_;
  GeneratorMatrix code_;
};

struct IceConcept {
  std::shared_ptr<const IceSepInstance> instance;
  PrfKey key;
  Codeword enc;

  static IceConcept make(std::shared_ptr<const IceSepInstance> instance, PrfKey key);
  Concept as_concept() const;
  Hypothesis as_hypothesis() const;
};

Label ice_concept_eval(const IceConcept& c, Point x);

double key_bit_guess(const Sample& block_examples, double r, double eta);

std::vector<Label> round_vector(std::span<const double> v, RngHandle rng);

struct IceLearnOutcome {
  Hypothesis hypothesis = Hypothesis::constant(Label::kPos);
  bool failed = false;
  std::string failure;
  Sample filtered;
  std::vector<double> v;
  std::vector<Label> z;
  std::size_t candidates = 0;
  PrfKey chosen_key;
};

IceLearnOutcome ice_malicious_learner(const Sample& s,
                                      const std::shared_ptr<const IceSepInstance>& instance,
                                      RngHandle rng);

// Turns each key block into contradictory pairs, spending ceil(|S_j|/2)
// corruptions per block. Odd blocks also receive one fresh value-side example.
AdversaryStrategy ice_idealized_nasty_strategy(const IceConcept& c);

// Post-ICE survivor pattern of a vulnerable trial: no key-side examples left,
// and the value side equals the untouched clean value side plus the fresh
// odd-block examples, as multisets.
bool ice_vulnerable_pattern_holds(const Sample& clean, const Corrupted& nasty,
                                  const IceConcept& c);

struct CouplingRecord {
  std::size_t m = 0;
  bool malleable = false;
  Sample nasty_input;  // the clean n'-sample the nasty adversary saw
  Corrupted nasty;
};

// Strong malicious strategy that realizes a nasty adversary of rate eta_nasty
// behind ICE. Of Z it uses the first 2 floor(m/2) positions; the rest of the
// clean sample is the nasty adversary's input. With k nasty corruptions it
// writes k contradictions of the replaced examples, the k new examples, and
// floor(m/2) - k contradictory pairs at the filler point.
AdversaryStrategy nasty_via_strong_malicious(AdversaryStrategy nasty, double eta_nasty,
                                             Point filler, CouplingRecord* record = nullptr);

struct BlockCounters {
  std::vector<long> alpha, beta, gamma, delta, alpha_prime, beta_prime;
};

// Counters per key block for a corrupted sample; positions in the ledger are
// new examples, all others are clean survivors.
BlockCounters block_counters(const Corrupted& corrupted, const IceConcept& c);

}  // namespace noisypac
