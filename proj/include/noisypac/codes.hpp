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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noisypac/core.hpp"

namespace noisypac {

class ListCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Message = BitString;

// Codeword of length w <= 64; position i is bit i. Bit 1 is symbol -1.
class Codeword {
 public:
  Codeword() = default;
  Codeword(std::uint64_t bits, std::size_t length);
  static Codeword from_labels(const std::vector<Label>& symbols);

  std::size_t length() const { return length_; }
  std::uint64_t bits() const { return bits_; }
  Label symbol(std::size_t i) const { return label_from_bit((bits_ >> i) & 1U); }
  std::vector<Label> symbols() const;
  // Hamming distance to the all-+1 word.
  std::size_t weight() const;

  friend bool operator==(const Codeword&, const Codeword&) = default;

 private:
  std::uint64_t bits_ = 0;
  std::size_t length_ = 0;
};

// Lexicographic order over the symbol string read from position 0, with
// +1 before -1 (the GF(2) order 0 < 1).
bool lexicographically_less(const Codeword& a, const Codeword& b);

enum class Symbol : std::int8_t { kNeg = -1, kErased = 0, kPos = 1 };
using ReceivedWord = std::vector<Symbol>;

ReceivedWord received_from(const Codeword& c);
// Parses a word written with '+', '-' and '?'.
ReceivedWord parse_received(std::string_view text);
std::string format_received(const ReceivedWord& r);

class GeneratorMatrix {
 public:
  // Rows are w-bit masks, one per message bit; must have full row rank.
  GeneratorMatrix(std::size_t w, std::vector<std::uint64_t> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return w_; }
  double rate() const { return static_cast<double>(rows_.size()) / static_cast<double>(w_); }
  std::uint64_t row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::uint64_t>& row_masks() const { return rows_; }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  std::size_t w_;
  std::vector<std::uint64_t> rows_;
};

std::size_t gf2_rank(std::vector<std::uint64_t> rows);

GeneratorMatrix gen_random_linear_code(double rho, std::size_t w, RngHandle rng);
Codeword encode(const GeneratorMatrix& g, const Message& msg);

// Every message whose codeword matches r on the unerased positions, in
// increasing message order.
std::vector<Message> erasure_list_decode(const GeneratorMatrix& g, const ReceivedWord& r,
                                         std::size_t cap);
// Every message whose codeword is within Hamming distance radius of r.
std::vector<Message> bitflip_list_decode(const GeneratorMatrix& g, const ReceivedWord& r,
                                         std::size_t radius, std::size_t cap);

struct IndexedCodeword {
  Message message;
  Codeword word;
};

// Codewords of weight <= bound with their messages, sorted lexicographically.
std::vector<IndexedCodeword> low_weight_subcode(const GeneratorMatrix& g, std::size_t bound);
std::vector<Codeword> low_weight_codewords(const GeneratorMatrix& g, std::size_t bound);

// Constants of the erasure/low-weight code choice derived from (eta_N, eta_M).
struct CodeParams {
  double eta_n = 0.0;
  double eta_m = 0.0;
  double rho = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double xi = 0.0;
  std::size_t list_cap = 64;

  static CodeParams derive(double eta_n, double eta_m, std::size_t list_cap = 64);
};

// Text format:
//   gf2-generator v1
//   <rows> <cols>
//   one hex line per row, position 0 in the most significant bit
std::string to_hex_text(const GeneratorMatrix& g);
GeneratorMatrix from_hex_text(std::string_view text);

}  // namespace noisypac
