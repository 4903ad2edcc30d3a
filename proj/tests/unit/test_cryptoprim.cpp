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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "noisypac/cryptoprim.hpp"
#include "noisypac/stats.hpp"

namespace noisypac {
namespace {

// SipHash-2-4 reference outputs for key bytes 0..15 and message bytes 0..i-1
// (public-domain reference vectors).
const std::uint64_t kSipVectors[64] = {
    0x726fdb47dd0e0e31ULL, 0x74f839c593dc67fdULL, 0x0d6c8009d9a94f5aULL,
    0x85676696d7fb7e2dULL, 0xcf2794e0277187b7ULL, 0x18765564cd99a68dULL,
    0xcbc9466e58fee3ceULL, 0xab0200f58b01d137ULL, 0x93f5f5799a932462ULL,
    0x9e0082df0ba9e4b0ULL, 0x7a5dbbc594ddb9f3ULL, 0xf4b32f46226bada7ULL,
    0x751e8fbc860ee5fbULL, 0x14ea5627c0843d90ULL, 0xf723ca908e7af2eeULL,
    0xa129ca6149be45e5ULL, 0x3f2acc7f57c29bdbULL, 0x699ae9f52cbe4794ULL,
    0x4bc1b3f0968dd39cULL, 0xbb6dc91da77961bdULL, 0xbed65cf21aa2ee98ULL,
    0xd0f2cbb02e3b67c7ULL, 0x93536795e3a33e88ULL, 0xa80c038ccd5ccec8ULL,
    0xb8ad50c6f649af94ULL, 0xbce192de8a85b8eaULL, 0x17d835b85bbb15f3ULL,
    0x2f2e6163076bcfadULL, 0xde4daaaca71dc9a5ULL, 0xa6a2506687956571ULL,
    0xad87a3535c49ef28ULL, 0x32d892fad841c342ULL, 0x7127512f72f27cceULL,
    0xa7f32346f95978e3ULL, 0x12e0b01abb051238ULL, 0x15e034d40fa197aeULL,
    0x314dffbe0815a3b4ULL, 0x027990f029623981ULL, 0xcadcd4e59ef40c4dULL,
    0x9abfd8766a33735cULL, 0x0e3ea96b5304a7d0ULL, 0xad0c42d6fc585992ULL,
    0x187306c89bc215a9ULL, 0xd4a60abcf3792b95ULL, 0xf935451de4f21df2ULL,
    0xa9538f0419755787ULL, 0xdb9acddff56ca510ULL, 0xd06c98cd5c0975ebULL,
    0xe612a3cb9ecba951ULL, 0xc766e62cfcadaf96ULL, 0xee64435a9752fe72ULL,
    0xa192d576b245165aULL, 0x0a8787bf8ecb74b2ULL, 0x81b3e73d20b49b6fULL,
    0x7fa8220ba3b2eceaULL, 0x245731c13ca42499ULL, 0xb78dbfaf3a8d83bdULL,
    0xea1ad565322a1a0bULL, 0x60e61c23a3795013ULL, 0x6606d7e446282b93ULL,
    0x6ca4ecb15c5f91e1ULL, 0x9f626da15c9625f3ULL, 0xe51b38608ef25f57ULL,
    0x958a324ceb064572ULL
};

TEST(SipHash, ReferenceVectors) {
  SipKey key{};
  for (std::uint8_t i = 0; i < 16; ++i) key[i] = i;
  std::vector<std::uint8_t> msg;
  for (std::size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(siphash24(key, msg), kSipVectors[i]) << "length " << i;
    msg.push_back(static_cast<std::uint8_t>(i));
  }
}

TEST(PrfKey, BitsAndLabels) {
  PrfKey k = PrfKey::from_bits(BitString{0b1011, 4});
  EXPECT_EQ(k.length(), 4u);
  EXPECT_TRUE(k.bit(0));
  EXPECT_FALSE(k.bit(2));
  EXPECT_EQ(k.symbol(0), Label::kNeg);
  EXPECT_EQ(k.as_bits(), (BitString{0b1011, 4}));
  EXPECT_EQ(PrfKey::from_labels(k.length() == 4 ? std::vector<Label>{Label::kNeg, Label::kNeg, Label::kPos, Label::kNeg}
                                                : std::vector<Label>{}),
            k);
  EXPECT_THROW(PrfKey(129), std::invalid_argument);
}

TEST(Prf, Deterministic) {
  Rng r(RngHandle{1, 0});
  PrfKey k = PrfKey::random(12, r);
  for (Point x = 0; x < 100; ++x) EXPECT_EQ(prf_eval(k, x), prf_eval(k, x));
}

TEST(Prf, Balanced) {
  Rng r(RngHandle{2, 0});
  PrfKey k = PrfKey::random(12, r);
  std::size_t pos = 0;
  for (Point x = 0; x < 10000; ++x) pos += prf_eval(k, x) == Label::kPos;
  EXPECT_NEAR(static_cast<double>(pos), 5000.0, 4 * 50.0);
}

TEST(Prf, NeighbouringKeysDecorrelated) {
  Rng r(RngHandle{3, 0});
  PrfKey a = PrfKey::random(12, r);
  PrfKey b = PrfKey(12, a.low() ^ 1ULL, a.high());
  std::size_t agree = 0;
  for (Point x = 0; x < 10000; ++x) agree += prf_eval(a, x) == prf_eval(b, x);
  EXPECT_NEAR(static_cast<double>(agree), 5000.0, 4 * 50.0);
}

TEST(Prf, KeyLengthIsPartOfTheInput) {
  PrfKey a(8, 5), b(9, 5);
  std::size_t agree = 0;
  for (Point x = 0; x < 2000; ++x) agree += prf_eval(a, x) == prf_eval(b, x);
  EXPECT_LT(agree, 2000u);
}

TEST(Prf, MonobitTruthTables) {
  Rng r(RngHandle{4, 0});
  std::size_t failures = 0;
  for (int key = 0; key < 64; ++key) {
    PrfKey k = PrfKey::random(12, r);
    std::uint64_t ones = 0;
    for (Point x = 0; x < 256; ++x) ones += prf_eval(k, x) == Label::kNeg;
    failures += stats::monobit_p_value(ones, 256) < 1e-3;
  }
  EXPECT_LE(failures, 2u);
}

TEST(Extractor, SpecExamples) {
  ExtractorSpec empty{24, 8, 0};
  EXPECT_EQ(extract(BitString{0xabcdef, 24}, 3, empty).length, 0u);
  ExtractorSpec spec{24, 8, 12};
  EXPECT_EQ(extract(BitString{0x123456, 24}, 77, spec), extract(BitString{0x123456, 24}, 77, spec));
  EXPECT_THROW(extract(BitString{1, 23}, 0, spec), std::invalid_argument);
  EXPECT_THROW((ExtractorSpec{8, 8, 9}.validate()), std::invalid_argument);
}

TEST(Extractor, ToeplitzStructure) {
  ExtractorSpec spec{16, 8, 6};
  auto rows = toeplitz_rows(42, spec);
  ASSERT_EQ(rows.size(), 6u);
  // Entry (i, j) depends only on i - j.
  for (std::size_t i = 1; i < 6; ++i) {
    for (std::size_t j = 1; j < 16; ++j) {
      EXPECT_EQ((rows[i] >> j) & 1U, (rows[i - 1] >> (j - 1)) & 1U);
    }
  }
}

TEST(Extractor, Linear) {
  ExtractorSpec spec{24, 8, 12};
  Rng r(RngHandle{5, 0});
  for (int t = 0; t < 500; ++t) {
    auto seed = static_cast<std::uint32_t>(r.below(256));
    BitString x{r.below(1ULL << 24), 24}, y{r.below(1ULL << 24), 24};
    BitString xy{x.bits ^ y.bits, 24}, zero{0, 24};
    std::uint64_t acc = extract(xy, seed, spec).bits ^ extract(x, seed, spec).bits ^
                        extract(y, seed, spec).bits ^ extract(zero, seed, spec).bits;
    EXPECT_EQ(acc, 0u);
  }
}

TEST(Extractor, SmoothsFlatSource) {
  // Source uniform on 2^10 random distinct 24-bit strings; exact TV of the
  // output from uniform, averaged over all 2^8 seeds.
  const std::size_t k = 10, m_out = 4;
  ExtractorSpec spec{24, 8, m_out};
  Rng r(RngHandle{6, 0});
  std::set<std::uint64_t> support;
  while (support.size() < (1U << k)) support.insert(r.below(1ULL << 24));
  double tv_sum = 0.0;
  for (std::uint32_t seed = 0; seed < spec.seed_count(); ++seed) {
    std::vector<double> hist(1U << m_out, 0.0);
    for (auto x : support) hist[extract(BitString{x, 24}, seed, spec).bits] += 1.0;
    double tv = 0.0;
    for (double h : hist) tv += std::abs(h / support.size() - 1.0 / (1U << m_out));
    tv_sum += tv / 2.0;
  }
  EXPECT_LE(tv_sum / static_cast<double>(spec.seed_count()), 0.1);
}

}  // namespace
}  // namespace noisypac
