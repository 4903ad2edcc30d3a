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

#include "noisypac/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace noisypac {

void check_rate(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("noise rate must lie in [0, 1]");
}

Corrupted apply_replacements(const Sample& clean, const StrategyOutcome& outcome,
                             std::size_t allowance, std::span<const std::size_t> allowed) {
  if (outcome.replacements.size() > allowance) {
    throw ProtocolViolation("adversary exceeded its corruption budget");
  }
  std::vector<Replacement> reps = outcome.replacements;
  std::sort(reps.begin(), reps.end(),
            [](const Replacement& a, const Replacement& b) { return a.index < b.index; });
  Corrupted out;
  out.sample = clean;
  out.ledger.allowance = allowance;
  out.ledger.exhausted = outcome.exhausted;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    if (r.index >= clean.size()) throw ProtocolViolation("adversary index out of range");
    if (i > 0 && reps[i - 1].index == r.index) {
      throw ProtocolViolation("adversary chose an index twice");
    }
    if (!allowed.empty() && !std::binary_search(allowed.begin(), allowed.end(), r.index)) {
      throw ProtocolViolation("adversary wrote outside the corruptible set");
    }
    out.ledger.corrupted_indices.push_back(r.index);
    out.ledger.replaced.push_back(clean[r.index]);
    out.ledger.introduced.push_back(r.example);
    out.sample[r.index] = r.example;
  }
  return out;
}

Corrupted malicious_corrupt(const DiscreteDistribution& d, const Concept& c, std::size_t n,
                            double eta, const OnlineStrategy& strategy, RngHandle rng) {
  check_rate(eta);
  if (c.domain_size() != d.size()) {
    throw std::invalid_argument("malicious_corrupt: concept and distribution domain sizes differ");
  }
  Rng gen(rng);
  Rng adversary_rng(rng.child(1));
  Corrupted out;
  out.sample.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point x = d.draw(gen);
    Example clean{x, c(x)};
    if (!gen.bernoulli(eta)) {
      out.sample.push_back(clean);
      continue;
    }
    Example e = strategy(std::span<const Example>(out.sample.data(), out.sample.size()), i,
                         adversary_rng);
    if (e.point >= c.domain_size()) {
      throw ProtocolViolation("malicious adversary emitted a point outside the domain");
    }
    out.ledger.corrupted_indices.push_back(i);
    out.ledger.corruptible.push_back(i);
    out.ledger.replaced.push_back(clean);
    out.ledger.introduced.push_back(e);
    out.sample.push_back(e);
  }
  out.ledger.allowance = out.ledger.corrupted_indices.size();
  return out;
}

Corrupted strong_malicious_corrupt(const Sample& clean, double eta,
                                   const AdversaryStrategy& strategy, RngHandle rng) {
  check_rate(eta);
  Rng gen(rng);
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (gen.bernoulli(eta)) z.push_back(i);
  }
  Rng adversary_rng(rng.child(1));
  StrategyOutcome outcome;
  if (!z.empty()) {
    AdversaryView view{clean, z.size(), z};
    outcome = strategy(view, adversary_rng);
  }
  Corrupted out = apply_replacements(clean, outcome, z.size(), z);
  out.ledger.corruptible = std::move(z);
  return out;
}

Corrupted nasty_corrupt(const Sample& clean, double eta, const AdversaryStrategy& strategy,
                        RngHandle rng) {
  check_rate(eta);
  Rng gen(rng);
  std::size_t z = static_cast<std::size_t>(gen.binomial_by_coins(clean.size(), eta));
  Rng adversary_rng(rng.child(1));
  AdversaryView view{clean, z, {}};
  StrategyOutcome outcome = strategy(view, adversary_rng);
  return apply_replacements(clean, outcome, z, {});
}

Corrupted fixed_rate_nasty_corrupt(const Sample& clean, double eta,
                                   const AdversaryStrategy& strategy, RngHandle rng) {
  check_rate(eta);
  auto k = static_cast<std::size_t>(std::floor(eta * static_cast<double>(clean.size())));
  Rng adversary_rng(rng);
  AdversaryView view{clean, k, {}};
  StrategyOutcome outcome = strategy(view, adversary_rng);
  if (outcome.replacements.size() != k) {
    throw ProtocolViolation("fixed-rate adversary must corrupt exactly floor(eta n) positions");
  }
  return apply_replacements(clean, outcome, k, {});
}

DiscreteDistribution labeled_distribution(const DiscreteDistribution& d, const Concept& c) {
  if (c.domain_size() != d.size()) {
    throw std::invalid_argument("labeled_distribution: domain sizes differ");
  }
  std::vector<double> w(2 * d.size(), 0.0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    w[labeled_index(Example{x, c(x)})] = d.weight(x);
  }
  return DiscreteDistribution(std::move(w));
}

Sample huber_sample(const DiscreteDistribution& d, const Concept& c, double eta,
                    const DiscreteDistribution& outliers, std::size_t n, RngHandle rng) {
  check_rate(eta);
  if (outliers.size() != 2 * d.size()) {
    throw std::invalid_argument("outlier law must live on the labeled index space");
  }
  Rng gen(rng);
  Sample s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (gen.bernoulli(eta)) {
      s.push_back(example_from_labeled_index(outliers.draw(gen)));
    } else {
      Point x = d.draw(gen);
      s.push_back(Example{x, c(x)});
    }
  }
  return s;
}

double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: domain sizes differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p.weight(i) - q.weight(i));
  return std::min(1.0, 0.5 * acc);
}

const DiscreteDistribution& tv_corrupt(const DiscreteDistribution& dc, double eta,
                                       const DiscreteDistribution& dprime) {
  check_rate(eta);
  if (tv_distance(dc, dprime) > eta + 1e-12) {
    throw TvBudgetExceeded("adversarial distribution is farther than eta in total variation");
  }
  return dprime;
}

DiscreteDistribution remove_then_add(const DiscreteDistribution& base,
                                     const std::vector<std::pair<std::size_t, double>>& removals,
                                     const std::vector<std::pair<std::size_t, double>>& additions) {
  std::vector<double> w = base.weights();
  for (auto [i, m] : removals) {
    if (i >= w.size() || m < 0.0 || m > w[i] + 1e-15) {
      throw std::invalid_argument("cannot remove more mass than an atom holds");
    }
    w[i] = std::max(0.0, w[i] - m);
  }
  for (auto [i, m] : additions) {
    if (i >= w.size() || m < 0.0) throw std::invalid_argument("invalid mass addition");
    w[i] += m;
  }
  return DiscreteDistribution(std::move(w));
}

// ---------------------------------------------------------------------------
// Strategies

namespace {

std::vector<std::size_t> touchable(const AdversaryView& view) {
  std::vector<std::size_t> pos;
  if (view.allowed.empty()) {
    std::size_t k = std::min(view.budget, view.clean.size());
    pos.resize(k);
    std::iota(pos.begin(), pos.end(), 0);
  } else {
    std::size_t k = std::min(view.budget, view.allowed.size());
    pos.assign(view.allowed.begin(), view.allowed.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return pos;
}

}  // namespace

AdversaryStrategy identity_strategy() {
  return [](const AdversaryView&, Rng&) { return StrategyOutcome{}; };
}

AdversaryStrategy flip_first_strategy() {
  return [](const AdversaryView& view, Rng&) {
    StrategyOutcome out;
    for (std::size_t i : touchable(view)) {
      Example e = view.clean[i];
      e.label = negate(e.label);
      out.replacements.push_back({i, e});
    }
    return out;
  };
}

AdversaryStrategy constant_strategy(Example e) {
  return [e](const AdversaryView& view, Rng&) {
    StrategyOutcome out;
    for (std::size_t i : touchable(view)) out.replacements.push_back({i, e});
    return out;
  };
}

AdversaryStrategy random_outlier_strategy(std::size_t domain_size) {
  if (domain_size == 0) throw std::invalid_argument("outliers need a nonempty domain");
  return [domain_size](const AdversaryView& view, Rng& rng) {
    StrategyOutcome out;
    for (std::size_t i : touchable(view)) {
      Point x = rng.below(domain_size);
      Label y = rng.bernoulli(0.5) ? Label::kPos : Label::kNeg;
      out.replacements.push_back({i, Example{x, y}});
    }
    return out;
  };
}

AdversaryStrategy copy_clean_strategy() {
  return [](const AdversaryView& view, Rng&) {
    StrategyOutcome out;
    for (std::size_t i : touchable(view)) out.replacements.push_back({i, view.clean[i]});
    return out;
  };
}

AdversaryStrategy contradictory_pair_strategy(Point x) {
  return [x](const AdversaryView& view, Rng&) {
    StrategyOutcome out;
    auto pos = touchable(view);
    for (std::size_t t = 0; t + 1 < pos.size(); t += 2) {
      out.replacements.push_back({pos[t], Example{x, Label::kPos}});
      out.replacements.push_back({pos[t + 1], Example{x, Label::kNeg}});
    }
    return out;
  };
}

OnlineStrategy outlier_draw_strategy(DiscreteDistribution outliers) {
  return [outliers = std::move(outliers)](std::span<const Example>, std::size_t, Rng& rng) {
    return example_from_labeled_index(outliers.draw(rng));
  };
}

OnlineStrategy constant_online_strategy(Example e) {
  return [e](std::span<const Example>, std::size_t, Rng&) { return e; };
}

}  // namespace noisypac
