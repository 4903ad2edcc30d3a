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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noisypac/core.hpp"

namespace noisypac {

using SipKey = std::array<std::uint8_t, 16>;

// SipHash-2-4 with a 128-bit key, 64-bit output.
std::uint64_t siphash24(const SipKey& key, std::span<const std::uint8_t> message);

// PRF key of up to 128 bits. Bit i set means key symbol -1.
class PrfKey {
 public:
  static constexpr std::size_t kMaxBits = 128;

  PrfKey() = default;
  explicit PrfKey(std::size_t length, std::uint64_t low = 0, std::uint64_t high = 0);
  static PrfKey from_bits(const BitString& bits);
  static PrfKey from_labels(const std::vector<Label>& labels);
  static PrfKey random(std::size_t length, Rng& rng);

  std::size_t length() const { return length_; }
  bool bit(std::size_t i) const;
  Label symbol(std::size_t i) const { return label_from_bit(bit(i)); }
  std::uint64_t low() const { return words_[0]; }
  std::uint64_t high() const { return words_[1]; }
  // Low 64 bits as a message for codes; requires length <= 64.
  BitString as_bits() const;

  friend bool operator==(const PrfKey&, const PrfKey&) = default;

 private:
  std::size_t length_ = 0;
  std::array<std::uint64_t, 2> words_{0, 0};
};

// One output bit of SipHash-2-4 keyed by the PRF key, on input
// (x as 8 little-endian bytes, key length as 1 byte).
Label prf_eval(const PrfKey& key, Point x);

// Seeded Toeplitz hash. The Toeplitz diagonal string of m_out + w - 1 bits is
// expanded from the u-bit seed by SipHash-2-4 under kExpansionKey, so the
// family has 2^u members and can be enumerated.
struct ExtractorSpec {
  std::size_t w = 0;
  std::size_t u = 0;
  std::size_t m_out = 0;

  static constexpr SipKey kExpansionKey = {0x6e, 0x6f, 0x69, 0x73, 0x79, 0x70, 0x61, 0x63,
                                           0x2d, 0x74, 0x6f, 0x65, 0x70, 0x6c, 0x69, 0x7a};

  void validate() const;
  std::size_t seed_count() const { return std::size_t{1} << u; }
};

// Row i of the Toeplitz matrix for a seed, as a w-bit mask.
std::vector<std::uint64_t> toeplitz_rows(std::uint32_t seed, const ExtractorSpec& spec);

BitString extract(const BitString& x, std::uint32_t seed, const ExtractorSpec& spec);

}  // namespace noisypac
