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

#include "noisypac/cryptoprim.hpp"

#include <bit>
#include <stdexcept>

namespace noisypac {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

std::uint64_t load_le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

struct SipState {
  std::uint64_t v0, v1, v2, v3;

  void round() {
    v0 += v1;
    v1 = rotl(v1, 13);
    v1 ^= v0;
    v0 = rotl(v0, 32);
    v2 += v3;
    v3 = rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl(v1, 17);
    v1 ^= v2;
    v2 = rotl(v2, 32);
  }

  void absorb(std::uint64_t m) {
    v3 ^= m;
    round();
    round();
    v0 ^= m;
  }
};

}  // namespace

std::uint64_t siphash24(const SipKey& key, std::span<const std::uint8_t> message) {
  std::uint64_t k0 = load_le64(key.data());
  std::uint64_t k1 = load_le64(key.data() + 8);
  SipState s{k0 ^ 0x736f6d6570736575ULL, k1 ^ 0x646f72616e646f6dULL,
             k0 ^ 0x6c7967656e657261ULL, k1 ^ 0x7465646279746573ULL};
  const std::size_t len = message.size();
  const std::size_t full = len - len % 8;
  for (std::size_t i = 0; i < full; i += 8) s.absorb(load_le64(message.data() + i));
  std::uint64_t last = static_cast<std::uint64_t>(len & 0xff) << 56;
  for (std::size_t i = 0; i < len % 8; ++i) {
    last |= static_cast<std::uint64_t>(message[full + i]) << (8 * i);
  }
  s.absorb(last);
  s.v2 ^= 0xff;
  for (int i = 0; i < 4; ++i) s.round();
  return s.v0 ^ s.v1 ^ s.v2 ^ s.v3;
}

// ---------------------------------------------------------------------------
// PRF

PrfKey::PrfKey(std::size_t length, std::uint64_t low, std::uint64_t high) : length_(length) {
  if (length > kMaxBits) throw std::invalid_argument("PRF key longer than 128 bits");
  if (length < 64) {
    low &= (std::uint64_t{1} << length) - 1;
    high = 0;
  } else if (length < 128) {
    high &= (std::uint64_t{1} << (length - 64)) - 1;
  }
  words_ = {low, high};
}

PrfKey PrfKey::from_bits(const BitString& bits) { return PrfKey(bits.length, bits.bits, 0); }

PrfKey PrfKey::from_labels(const std::vector<Label>& labels) {
  if (labels.size() > kMaxBits) throw std::invalid_argument("PRF key longer than 128 bits");
  std::uint64_t w[2] = {0, 0};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (bit_from_label(labels[i])) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return PrfKey(labels.size(), w[0], w[1]);
}

PrfKey PrfKey::random(std::size_t length, Rng& rng) {
  std::uint64_t lo = rng.next();
  std::uint64_t hi = rng.next();
  return PrfKey(length, lo, hi);
}

bool PrfKey::bit(std::size_t i) const {
  if (i >= length_) throw std::out_of_range("PRF key bit index");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

BitString PrfKey::as_bits() const {
  if (length_ > 64) throw std::invalid_argument("PRF key longer than 64 bits");
  return BitString{words_[0], length_};
}

Label prf_eval(const PrfKey& key, Point x) {
  SipKey k{};
  for (int i = 0; i < 8; ++i) {
    k[i] = static_cast<std::uint8_t>(key.low() >> (8 * i));
    k[8 + i] = static_cast<std::uint8_t>(key.high() >> (8 * i));
  }
  std::array<std::uint8_t, 9> msg{};
  for (int i = 0; i < 8; ++i) msg[i] = static_cast<std::uint8_t>(x >> (8 * i));
  msg[8] = static_cast<std::uint8_t>(key.length());
  return label_from_bit(siphash24(k, msg) & 1U);
}

// ---------------------------------------------------------------------------
// Extractor

void ExtractorSpec::validate() const {
  if (w == 0 || w > 64) throw std::invalid_argument("extractor input length must be in [1, 64]");
  if (u > 16) throw std::invalid_argument("extractor seed length must be at most 16");
  if (m_out > w) throw std::invalid_argument("extractor output longer than input");
}

std::vector<std::uint64_t> toeplitz_rows(std::uint32_t seed, const ExtractorSpec& spec) {
  spec.validate();
  if (spec.u < 32 && (seed >> spec.u) != 0) throw std::invalid_argument("seed wider than u bits");
  std::vector<std::uint64_t> rows(spec.m_out, 0);
  if (spec.m_out == 0) return rows;
  const std::size_t diag = spec.m_out + spec.w - 1;
  std::vector<std::uint64_t> stream((diag + 63) / 64, 0);
  std::array<std::uint8_t, 8> msg{};
  msg[0] = static_cast<std::uint8_t>(seed);
  msg[1] = static_cast<std::uint8_t>(seed >> 8);
  msg[2] = static_cast<std::uint8_t>(spec.w);
  msg[3] = static_cast<std::uint8_t>(spec.m_out);
  for (std::size_t blk = 0; blk < stream.size(); ++blk) {
    msg[4] = static_cast<std::uint8_t>(blk);
    stream[blk] = siphash24(ExtractorSpec::kExpansionKey, msg);
  }
  auto diag_bit = [&](std::size_t t) { return (stream[t / 64] >> (t % 64)) & 1U; };
  // T[i][j] depends only on i - j.
  for (std::size_t i = 0; i < spec.m_out; ++i) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < spec.w; ++j) {
      if (diag_bit(i + spec.w - 1 - j)) row |= std::uint64_t{1} << j;
    }
    rows[i] = row;
  }
  return rows;
}

BitString extract(const BitString& x, std::uint32_t seed, const ExtractorSpec& spec) {
  if (x.length != spec.w) throw std::invalid_argument("extract: input length mismatch");
  auto rows = toeplitz_rows(seed, spec);
  BitString out{0, spec.m_out};
  for (std::size_t i = 0; i < spec.m_out; ++i) {
    if (std::popcount(rows[i] & x.bits) & 1) out.bits |= std::uint64_t{1} << i;
  }
  return out;
}

}  // namespace noisypac
