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

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "noisypac/bench.hpp"
#include "noisypac/stats.hpp"

namespace noisypac::detail {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

inline Json interval_json(const stats::Interval& i) { return Json::array({i.lo, i.hi}); }

inline Json frequency_json(std::size_t hits, std::size_t trials) {
  double f = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  return Json{{"count", hits},
              {"trials", trials},
              {"frequency", f},
              {"ci99", interval_json(stats::binomial_ci(hits, trials, 0.99))}};
}

inline Json chi_json(const stats::ChiSquare& c) {
  return Json{{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
}

inline double fraction(std::size_t hits, std::size_t trials) {
  return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
}

inline double b2d(bool b) { return b ? 1.0 : 0.0; }

}  // namespace noisypac::detail
