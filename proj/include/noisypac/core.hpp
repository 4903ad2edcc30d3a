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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "noisypac/rng.hpp"

namespace noisypac {

using Point = std::uint64_t;

enum class Label : std::int8_t { kNeg = -1, kPos = 1 };

constexpr Label negate(Label y) { return y == Label::kPos ? Label::kNeg : Label::kPos; }
constexpr int to_int(Label y) { return static_cast<int>(y); }
// GF(2) convention: bit 0 is +1, bit 1 is -1.
constexpr Label label_from_bit(bool one) { return one ? Label::kNeg : Label::kPos; }
constexpr bool bit_from_label(Label y) { return y == Label::kNeg; }
Label label_from_int(int v);

struct Example {
  Point point = 0;
  Label label = Label::kPos;

  friend bool operator==(const Example&, const Example&) = default;
  friend auto operator<=>(const Example& a, const Example& b) {
    if (auto c = a.point <=> b.point; c != 0) return c;
    return to_int(a.label) <=> to_int(b.label);
  }
};

using Sample = std::vector<Example>;

// Labeled-example index space: (x, +1) -> 2x, (x, -1) -> 2x + 1.
constexpr std::size_t labeled_index(const Example& e) {
  return 2 * static_cast<std::size_t>(e.point) + (e.label == Label::kNeg ? 1 : 0);
}
constexpr Example example_from_labeled_index(std::size_t i) {
  return Example{static_cast<Point>(i / 2), (i % 2) ? Label::kNeg : Label::kPos};
}

// Sorted copy, used to compare samples as multisets.
Sample as_multiset(Sample s);

// Fixed-length bit string of at most 64 bits; bit i is position i.
struct BitString {
  std::uint64_t bits = 0;
  std::size_t length = 0;

  bool at(std::size_t i) const { return (bits >> i) & 1U; }
  friend bool operator==(const BitString&, const BitString&) = default;
};

class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> weights);
  static DiscreteDistribution uniform(std::size_t size);
  static DiscreteDistribution point_mass(std::size_t size, std::size_t at);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_uniform() const { return uniform_; }

  std::size_t draw(Rng& rng) const;

 private:
  DiscreteDistribution(std::vector<double> weights, bool uniform);

  std::vector<double> weights_;
  std::vector<double> cdf_;
  bool uniform_ = false;
};

class Concept {
 public:
  using Fn = std::function<Label(Point)>;

  Concept(std::size_t domain_size, Fn fn);
  static Concept constant(std::size_t domain_size, Label y);
  static Concept from_table(std::vector<Label> table);

  Label operator()(Point x) const { return fn_(x); }
  std::size_t domain_size() const { return domain_size_; }

 private:
  std::size_t domain_size_;
  Fn fn_;
};

// Deterministic function or a uniform mixture of hypotheses. Mixtures are
// kept explicit so that error computations stay exact.
class Hypothesis {
 public:
  using Fn = std::function<Label(Point)>;

  // domain_size 0 means the function is defined on every point.
  static Hypothesis deterministic(std::size_t domain_size, Fn fn);
  static Hypothesis constant(Label y, std::size_t domain_size = 0);
  static Hypothesis from_concept(const Concept& c);
  static Hypothesis mixture(std::vector<Hypothesis> components);

  Hypothesis negated() const;

  bool is_mixture() const;
  std::size_t domain_size() const;
  const std::vector<Hypothesis>& components() const;

  double prob_positive(Point x) const;
  double prob_disagree(Point x, Label y) const;
  // Deterministic kinds ignore the query handle. A mixture picks its
  // component from a hash of (query, x), so repeated queries agree.
  Label evaluate(Point x, RngHandle query = {}) const;

 private:
  struct Node;
  explicit Hypothesis(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Per-point label counts of a sample, sorted by point.
struct PointTally {
  std::vector<Point> points;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
  std::size_t total = 0;

  static PointTally of(const Sample& s);
};

// Expected number of examples in the tally that h mislabels.
double disagreements(const Hypothesis& h, const PointTally& tally);

double error_rate(const Hypothesis& h, const Concept& c, const DiscreteDistribution& d);
Sample draw_clean_sample(const DiscreteDistribution& d, const Concept& c, std::size_t n,
                         RngHandle rng);
double empirical_error(const Hypothesis& h, const Sample& s);

// Domain split into a key side of w equal blocks followed by a value side of
// 2^value_dim points. Value-side points map to {0,1}^value_dim in order.
struct KeyValueLayout {
  std::size_t w = 0;
  std::size_t block_size = 0;
  std::size_t value_dim = 0;

  // Chooses the block size so the key side holds a key_fraction share of
  // the domain as closely as integer block sizes allow.
  static KeyValueLayout for_key_fraction(std::size_t w, std::size_t value_dim,
                                         double key_fraction);

  std::size_t key_size() const { return w * block_size; }
  std::size_t value_size() const { return std::size_t{1} << value_dim; }
  std::size_t domain_size() const { return key_size() + value_size(); }
  double key_fraction() const {
    return static_cast<double>(key_size()) / static_cast<double>(domain_size());
  }

  bool is_key(Point x) const { return x < key_size(); }
  std::size_t block_of(Point x) const { return static_cast<std::size_t>(x / block_size); }
  Point block_begin(std::size_t j) const { return static_cast<Point>(j * block_size); }
  Point value_offset(Point x) const { return x - key_size(); }
  Point value_point(Point offset) const { return offset + key_size(); }
};

}  // namespace noisypac
