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

#include "noisypac/rng.hpp"

#include <stdexcept>

namespace noisypac {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

RngHandle RngHandle::child(std::uint64_t id) const {
  return RngHandle{seed, mix64(stream, id)};
}

namespace {

std::mt19937_64 seeded_engine(RngHandle h) {
  std::seed_seq seq{static_cast<std::uint32_t>(h.seed),
                    static_cast<std::uint32_t>(h.seed >> 32),
                    static_cast<std::uint32_t>(h.stream),
                    static_cast<std::uint32_t>(h.stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(RngHandle handle) : engine_(seeded_engine(handle)) {}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool Rng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

std::uint64_t Rng::binomial_by_coins(std::uint64_t n, double p) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) count += bernoulli(p) ? 1 : 0;
  return count;
}

}  // namespace noisypac
