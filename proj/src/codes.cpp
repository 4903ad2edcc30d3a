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

#include "noisypac/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "noisypac/stats.hpp"

namespace noisypac {

namespace {

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t reverse_bits(std::uint64_t x, std::size_t w) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < w; ++i) r |= ((x >> i) & 1U) << (w - 1 - i);
  return r;
}

std::uint64_t received_bits(const ReceivedWord& r, std::uint64_t* known) {
  std::uint64_t bits = 0, mask = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == Symbol::kErased) continue;
    mask |= std::uint64_t{1} << i;
    if (r[i] == Symbol::kNeg) bits |= std::uint64_t{1} << i;
  }
  if (known) *known = mask;
  return bits;
}

}  // namespace

// ---------------------------------------------------------------------------
// Codeword and received words

Codeword::Codeword(std::uint64_t bits, std::size_t length) : bits_(bits), length_(length) {
  if (length > 64) throw std::invalid_argument("codewords are limited to 64 symbols");
  if ((bits & ~low_mask(length)) != 0) throw std::invalid_argument("codeword bits beyond length");
}

Codeword Codeword::from_labels(const std::vector<Label>& symbols) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (bit_from_label(symbols[i])) bits |= std::uint64_t{1} << i;
  }
  return Codeword(bits, symbols.size());
}

std::vector<Label> Codeword::symbols() const {
  std::vector<Label> out(length_);
  for (std::size_t i = 0; i < length_; ++i) out[i] = symbol(i);
  return out;
}

std::size_t Codeword::weight() const { return static_cast<std::size_t>(std::popcount(bits_)); }

bool lexicographically_less(const Codeword& a, const Codeword& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return reverse_bits(a.bits(), a.length()) < reverse_bits(b.bits(), b.length());
}

ReceivedWord received_from(const Codeword& c) {
  ReceivedWord r(c.length());
  for (std::size_t i = 0; i < c.length(); ++i) {
    r[i] = c.symbol(i) == Label::kPos ? Symbol::kPos : Symbol::kNeg;
  }
  return r;
}

ReceivedWord parse_received(std::string_view text) {
  ReceivedWord r;
  for (char ch : text) {
    switch (ch) {
      case '+': r.push_back(Symbol::kPos); break;
      case '-': r.push_back(Symbol::kNeg); break;
      case '?': r.push_back(Symbol::kErased); break;
      default: throw std::invalid_argument("received word symbols must be '+', '-' or '?'");
    }
  }
  return r;
}

std::string format_received(const ReceivedWord& r) {
  std::string s;
  for (Symbol x : r) s.push_back(x == Symbol::kPos ? '+' : x == Symbol::kNeg ? '-' : '?');
  return s;
}

// ---------------------------------------------------------------------------
// Generator matrices

std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0 && rank < rows.size(); --bit) {
    std::uint64_t m = std::uint64_t{1} << bit;
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                           [m](std::uint64_t r) { return r & m; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i] & m)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

GeneratorMatrix::GeneratorMatrix(std::size_t w, std::vector<std::uint64_t> rows)
    : w_(w), rows_(std::move(rows)) {
  if (w_ == 0 || w_ > 64) throw std::invalid_argument("code length must be in [1, 64]");
  if (rows_.empty() || rows_.size() > w_) throw std::invalid_argument("need 1 <= rows <= cols");
  for (auto r : rows_) {
    if ((r & ~low_mask(w_)) != 0) throw std::invalid_argument("generator row wider than w");
  }
  if (gf2_rank(rows_) != rows_.size()) throw std::invalid_argument("generator not full rank");
}

GeneratorMatrix gen_random_linear_code(double rho, std::size_t w, RngHandle rng) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rate must lie in (0, 1)");
  if (w == 0 || w > 64) throw std::invalid_argument("code length must be in [1, 64]");
  double kw = rho * static_cast<double>(w);
  auto k = static_cast<std::size_t>(std::llround(kw));
  if (std::abs(kw - static_cast<double>(k)) > 1e-9 || k == 0) {
    throw std::invalid_argument("rho * w must be a positive integer");
  }
  Rng gen(rng);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<std::uint64_t> rows(k);
    for (auto& r : rows) r = gen.next() & low_mask(w);
    if (gf2_rank(rows) == k) return GeneratorMatrix(w, std::move(rows));
  }
  throw std::runtime_error("could not draw a full-rank generator matrix");
}

Codeword encode(const GeneratorMatrix& g, const Message& msg) {
  if (msg.length != g.rows()) throw std::invalid_argument("encode: message length mismatch");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (msg.at(i)) c ^= g.row(i);
  }
  return Codeword(c, g.cols());
}

// ---------------------------------------------------------------------------
// Decoding

std::vector<Message> erasure_list_decode(const GeneratorMatrix& g, const ReceivedWord& r,
                                         std::size_t cap) {
  if (r.size() != g.cols()) throw std::invalid_argument("received word length mismatch");
  const std::size_t k = g.rows();
  std::uint64_t known = 0;
  std::uint64_t target = received_bits(r, &known);

  // One equation per known position: <column_t, m> = target_t.
  struct Eq {
    std::uint64_t coeffs;
    bool rhs;
  };
  std::vector<Eq> eqs;
  for (std::size_t t = 0; t < g.cols(); ++t) {
    if (!((known >> t) & 1U)) continue;
    std::uint64_t col = 0;
    for (std::size_t i = 0; i < k; ++i) col |= ((g.row(i) >> t) & 1U) << i;
    eqs.push_back({col, static_cast<bool>((target >> t) & 1U)});
  }

  std::vector<int> pivot_row(k, -1);
  std::size_t rank = 0;
  for (std::size_t var = 0; var < k; ++var) {
    std::uint64_t m = std::uint64_t{1} << var;
    std::size_t sel = rank;
    while (sel < eqs.size() && !(eqs[sel].coeffs & m)) ++sel;
    if (sel == eqs.size()) continue;
    std::swap(eqs[sel], eqs[rank]);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (i != rank && (eqs[i].coeffs & m)) {
        eqs[i].coeffs ^= eqs[rank].coeffs;
        eqs[i].rhs ^= eqs[rank].rhs;
      }
    }
    pivot_row[var] = static_cast<int>(rank);
    ++rank;
  }
  for (std::size_t i = rank; i < eqs.size(); ++i) {
    if (eqs[i].rhs) return {};
  }

  std::vector<std::size_t> free_vars;
  for (std::size_t var = 0; var < k; ++var) {
    if (pivot_row[var] < 0) free_vars.push_back(var);
  }
  if (free_vars.size() >= 63 || (std::uint64_t{1} << free_vars.size()) > cap) {
    throw ListCapExceeded("erasure list exceeds the cap");
  }
  std::vector<Message> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << free_vars.size()); ++a) {
    std::uint64_t m = 0;
    for (std::size_t f = 0; f < free_vars.size(); ++f) {
      if ((a >> f) & 1U) m |= std::uint64_t{1} << free_vars[f];
    }
    for (std::size_t var = 0; var < k; ++var) {
      if (pivot_row[var] < 0) continue;
      const Eq& e = eqs[static_cast<std::size_t>(pivot_row[var])];
      std::uint64_t others = e.coeffs & ~(std::uint64_t{1} << var);
      bool v = e.rhs ^ static_cast<bool>(std::popcount(others & m) & 1);
      if (v) m |= std::uint64_t{1} << var;
    }
    out.push_back(Message{m, k});
  }
  std::sort(out.begin(), out.end(),
            [](const Message& a, const Message& b) { return a.bits < b.bits; });
  return out;
}

namespace {

template <typename Visit>
void for_each_codeword(const GeneratorMatrix& g, Visit&& visit) {
  const std::size_t k = g.rows();
  if (k > 24) throw std::invalid_argument("codeword enumeration limited to 24 message bits");
  std::uint64_t m = 0, c = 0;
  visit(m, c);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    int bit = std::countr_zero(i);
    m ^= std::uint64_t{1} << bit;
    c ^= g.row(static_cast<std::size_t>(bit));
    visit(m, c);
  }
}

}  // namespace

std::vector<Message> bitflip_list_decode(const GeneratorMatrix& g, const ReceivedWord& r,
                                         std::size_t radius, std::size_t cap) {
  if (r.size() != g.cols()) throw std::invalid_argument("received word length mismatch");
  std::uint64_t known = 0;
  std::uint64_t target = received_bits(r, &known);
  if (known != low_mask(g.cols())) {
    throw std::invalid_argument("bit-flip decoding does not accept erasures");
  }
  std::vector<Message> out;
  for_each_codeword(g, [&](std::uint64_t m, std::uint64_t c) {
    if (static_cast<std::size_t>(std::popcount(c ^ target)) <= radius) {
      if (out.size() == cap) throw ListCapExceeded("bit-flip list exceeds the cap");
      out.push_back(Message{m, g.rows()});
    }
  });
  std::sort(out.begin(), out.end(),
            [](const Message& a, const Message& b) { return a.bits < b.bits; });
  return out;
}

std::vector<IndexedCodeword> low_weight_subcode(const GeneratorMatrix& g, std::size_t bound) {
  std::vector<IndexedCodeword> out;
  for_each_codeword(g, [&](std::uint64_t m, std::uint64_t c) {
    if (static_cast<std::size_t>(std::popcount(c)) <= bound) {
      out.push_back({Message{m, g.rows()}, Codeword(c, g.cols())});
    }
  });
  std::sort(out.begin(), out.end(), [](const IndexedCodeword& a, const IndexedCodeword& b) {
    return lexicographically_less(a.word, b.word);
  });
  return out;
}

std::vector<Codeword> low_weight_codewords(const GeneratorMatrix& g, std::size_t bound) {
  std::vector<Codeword> out;
  for (auto& e : low_weight_subcode(g, bound)) out.push_back(e.word);
  return out;
}

CodeParams CodeParams::derive(double eta_n, double eta_m, std::size_t list_cap) {
  if (!(eta_n > 0.0 && eta_n < 0.5)) throw std::invalid_argument("eta_N must lie in (0, 1/2)");
  if (!(eta_m > 0.0 && eta_m < 1.0)) throw std::invalid_argument("eta_M must lie in (0, 1)");
  CodeParams p;
  p.eta_n = eta_n;
  p.eta_m = eta_m;
  p.list_cap = list_cap;
  double h = stats::binary_entropy(eta_n);
  double a = eta_m / (1.0 - eta_m);
  p.tau = 0.998 * h + 0.002 * a;
  p.rho = 1.0 - 0.999 * h - 0.001 * a;
  p.lambda = (p.rho + h - 1.0) / 2.0;
  p.xi = 0.001 * h - 0.001 * a;
  return p;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_hex_text(const GeneratorMatrix& g) {
  static const char* kHex = "0123456789abcdef";
  std::ostringstream os;
  os << "gf2-generator v1\n" << g.rows() << ' ' << g.cols() << '\n';
  const std::size_t digits = (g.cols() + 3) / 4;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t d = 0; d < digits; ++d) {
      unsigned nibble = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        std::size_t pos = 4 * d + b;
        unsigned bit = pos < g.cols() ? static_cast<unsigned>((g.row(i) >> pos) & 1U) : 0U;
        nibble = (nibble << 1) | bit;
      }
      os << kHex[nibble];
    }
    os << '\n';
  }
  return os.str();
}

GeneratorMatrix from_hex_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string magic, version;
  std::size_t k = 0, w = 0;
  if (!(is >> magic >> version) || magic != "gf2-generator" || version != "v1") {
    throw std::invalid_argument("not a gf2-generator v1 file");
  }
  if (!(is >> k >> w) || w == 0 || w > 64 || k == 0) {
    throw std::invalid_argument("bad generator dimensions");
  }
  const std::size_t digits = (w + 3) / 4;
  std::vector<std::uint64_t> rows;
  for (std::size_t i = 0; i < k; ++i) {
    std::string line;
    if (!(is >> line) || line.size() != digits) throw std::invalid_argument("bad generator row");
    std::uint64_t row = 0;
    for (std::size_t d = 0; d < digits; ++d) {
      char ch = line[d];
      unsigned nibble;
      if (ch >= '0' && ch <= '9') nibble = static_cast<unsigned>(ch - '0');
      else if (ch >= 'a' && ch <= 'f') nibble = static_cast<unsigned>(ch - 'a' + 10);
      else if (ch >= 'A' && ch <= 'F') nibble = static_cast<unsigned>(ch - 'A' + 10);
      else throw std::invalid_argument("bad hex digit");
      for (std::size_t b = 0; b < 4; ++b) {
        std::size_t pos = 4 * d + b;
        if ((nibble >> (3 - b)) & 1U) {
          if (pos >= w) throw std::invalid_argument("padding bits must be zero");
          row |= std::uint64_t{1} << pos;
        }
      }
    }
    rows.push_back(row);
  }
  return GeneratorMatrix(w, std::move(rows));
}

}  // namespace noisypac
