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

#include <cstdint>
#include <random>
#include <vector>

namespace noisypac {

// Every randomized operation takes an RngHandle. The generator family is
// fixed here: a (seed, stream) pair is fed through std::seed_seq into a
// std::mt19937_64. Both are bit-exactly specified by the C++ standard, so
// draws are reproducible across compilers. Bounded integers and doubles are
// derived from raw 64-bit outputs by the helpers below rather than by the
// implementation-defined <random> distributions.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Derives an independent child stream, e.g. one per trial.
  RngHandle child(std::uint64_t id) const;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngHandle handle);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p);
  // Number of successes among n explicit p-coins.
  std::uint64_t binomial_by_coins(std::uint64_t n, double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace noisypac
