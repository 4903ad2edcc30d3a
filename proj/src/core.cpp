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

#include "noisypac/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace noisypac {

Label label_from_int(int v) {
  if (v == 1) return Label::kPos;
  if (v == -1) return Label::kNeg;
  throw std::invalid_argument("label must be +1 or -1");
}

Sample as_multiset(Sample s) {
  std::sort(s.begin(), s.end());
  return s;
}

// ---------------------------------------------------------------------------
// DiscreteDistribution

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights)
    : DiscreteDistribution(std::move(weights), false) {}

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights, bool uniform)
    : weights_(std::move(weights)), uniform_(uniform) {
  if (weights_.empty()) throw std::invalid_argument("distribution over empty domain");
  long double sum = 0.0L;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("distribution weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!uniform_ && std::abs(static_cast<double>(sum) - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution weights must sum to 1");
  }
  if (!uniform_) {
    cdf_.resize(weights_.size());
    std::partial_sum(weights_.begin(), weights_.end(), cdf_.begin());
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform distribution over empty domain");
  std::vector<double> w(size, 1.0 / static_cast<double>(size));
  return DiscreteDistribution(std::move(w), true);
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t size, std::size_t at) {
  if (at >= size) throw std::invalid_argument("point mass outside domain");
  std::vector<double> w(size, 0.0);
  w[at] = 1.0;
  return DiscreteDistribution(std::move(w));
}

std::size_t DiscreteDistribution::draw(Rng& rng) const {
  if (uniform_) return static_cast<std::size_t>(rng.below(weights_.size()));
  double u = rng.uniform01() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  if (i >= weights_.size()) i = weights_.size() - 1;
  // Never land on a zero-weight atom through rounding at a cdf plateau.
  while (weights_[i] == 0.0 && i > 0) --i;
  return i;
}

// ---------------------------------------------------------------------------
// Concept

Concept::Concept(std::size_t domain_size, Fn fn) : domain_size_(domain_size), fn_(std::move(fn)) {
  if (domain_size_ == 0) throw std::invalid_argument("concept over empty domain");
  if (!fn_) throw std::invalid_argument("concept needs a function");
}

Concept Concept::constant(std::size_t domain_size, Label y) {
  return Concept(domain_size, [y](Point) { return y; });
}

Concept Concept::from_table(std::vector<Label> table) {
  auto shared = std::make_shared<const std::vector<Label>>(std::move(table));
  std::size_t size = shared->size();
  return Concept(size, [shared](Point x) { return (*shared)[static_cast<std::size_t>(x)]; });
}

// ---------------------------------------------------------------------------
// Hypothesis

struct Hypothesis::Node {
  std::size_t domain_size = 0;
  Fn fn;
  std::vector<Hypothesis> components;
};

Hypothesis::Hypothesis(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Hypothesis Hypothesis::deterministic(std::size_t domain_size, Fn fn) {
  if (!fn) throw std::invalid_argument("hypothesis needs a function");
  auto node = std::make_shared<Node>();
  node->domain_size = domain_size;
  node->fn = std::move(fn);
  return Hypothesis(std::move(node));
}

Hypothesis Hypothesis::constant(Label y, std::size_t domain_size) {
  return deterministic(domain_size, [y](Point) { return y; });
}

Hypothesis Hypothesis::from_concept(const Concept& c) {
  return deterministic(c.domain_size(), [c](Point x) { return c(x); });
}

Hypothesis Hypothesis::mixture(std::vector<Hypothesis> components) {
  if (components.empty()) throw std::invalid_argument("empty mixture");
  std::size_t size = 0;
  for (const auto& h : components) {
    if (h.domain_size() == 0) continue;
    if (size != 0 && size != h.domain_size()) {
      throw std::invalid_argument("mixture components disagree on domain size");
    }
    size = h.domain_size();
  }
  auto node = std::make_shared<Node>();
  node->domain_size = size;
  node->components = std::move(components);
  return Hypothesis(std::move(node));
}

Hypothesis Hypothesis::negated() const {
  if (!is_mixture()) {
    Fn fn = node_->fn;
    return deterministic(node_->domain_size, [fn](Point x) { return negate(fn(x)); });
  }
  std::vector<Hypothesis> flipped;
  flipped.reserve(node_->components.size());
  for (const auto& h : node_->components) flipped.push_back(h.negated());
  return mixture(std::move(flipped));
}

bool Hypothesis::is_mixture() const { return !node_->components.empty(); }
std::size_t Hypothesis::domain_size() const { return node_->domain_size; }
const std::vector<Hypothesis>& Hypothesis::components() const { return node_->components; }

double Hypothesis::prob_positive(Point x) const {
  if (!is_mixture()) return node_->fn(x) == Label::kPos ? 1.0 : 0.0;
  double sum = 0.0;
  for (const auto& h : node_->components) sum += h.prob_positive(x);
  return sum / static_cast<double>(node_->components.size());
}

double Hypothesis::prob_disagree(Point x, Label y) const {
  double p = prob_positive(x);
  return y == Label::kPos ? 1.0 - p : p;
}

Label Hypothesis::evaluate(Point x, RngHandle query) const {
  if (!is_mixture()) return node_->fn(x);
  const auto& comps = node_->components;
  std::uint64_t h = mix64(mix64(query.seed, query.stream), x);
  std::size_t i = static_cast<std::size_t>(h % comps.size());
  return comps[i].evaluate(x, query.child(x));
}

// ---------------------------------------------------------------------------
// Tallies and error metrics

PointTally PointTally::of(const Sample& s) {
  std::unordered_map<Point, std::size_t> slot;
  slot.reserve(s.size());
  PointTally t;
  for (const auto& e : s) {
    auto [it, fresh] = slot.try_emplace(e.point, t.points.size());
    if (fresh) {
      t.points.push_back(e.point);
      t.pos.push_back(0);
      t.neg.push_back(0);
    }
    (e.label == Label::kPos ? t.pos : t.neg)[it->second] += 1;
  }
  std::vector<std::size_t> order(t.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return t.points[a] < t.points[b]; });
  PointTally sorted;
  sorted.total = s.size();
  for (std::size_t i : order) {
    sorted.points.push_back(t.points[i]);
    sorted.pos.push_back(t.pos[i]);
    sorted.neg.push_back(t.neg[i]);
  }
  return sorted;
}

double disagreements(const Hypothesis& h, const PointTally& tally) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tally.points.size(); ++i) {
    double p = h.prob_positive(tally.points[i]);
    sum += static_cast<double>(tally.pos[i]) * (1.0 - p) + static_cast<double>(tally.neg[i]) * p;
  }
  return sum;
}

double error_rate(const Hypothesis& h, const Concept& c, const DiscreteDistribution& d) {
  if (c.domain_size() != d.size()) {
    throw std::invalid_argument("error_rate: concept and distribution domain sizes differ");
  }
  if (h.domain_size() != 0 && h.domain_size() != d.size()) {
    throw std::invalid_argument("error_rate: hypothesis and distribution domain sizes differ");
  }
  double err = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x) {
    double w = d.weight(x);
    if (w == 0.0) continue;
    err += w * h.prob_disagree(x, c(x));
  }
  return std::clamp(err, 0.0, 1.0);
}

Sample draw_clean_sample(const DiscreteDistribution& d, const Concept& c, std::size_t n,
                         RngHandle rng) {
  if (c.domain_size() != d.size()) {
    throw std::invalid_argument("draw_clean_sample: concept and distribution domain sizes differ");
  }
  Rng gen(rng);
  Sample s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point x = d.draw(gen);
    s.push_back(Example{x, c(x)});
  }
  return s;
}

double empirical_error(const Hypothesis& h, const Sample& s) {
  if (s.empty()) throw std::invalid_argument("empirical_error on empty sample");
  return disagreements(h, PointTally::of(s)) / static_cast<double>(s.size());
}

// ---------------------------------------------------------------------------
// KeyValueLayout

KeyValueLayout KeyValueLayout::for_key_fraction(std::size_t w, std::size_t value_dim,
                                                double key_fraction) {
  if (w == 0) throw std::invalid_argument("layout needs at least one block");
  if (value_dim >= 40) throw std::invalid_argument("value dimension too large");
  if (!(key_fraction > 0.0 && key_fraction < 1.0)) {
    throw std::invalid_argument("key fraction must lie in (0, 1)");
  }
  double value = std::ldexp(1.0, static_cast<int>(value_dim));
  double key_points = value * key_fraction / (1.0 - key_fraction);
  auto block = static_cast<std::size_t>(std::llround(key_points / static_cast<double>(w)));
  KeyValueLayout layout{w, std::max<std::size_t>(block, 1), value_dim};
  return layout;
}

}  // namespace noisypac
