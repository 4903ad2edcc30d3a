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

// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisypac/bench.hpp"

namespace {

using noisypac::Json;

struct Criterion {
  int id;
  const char* scenario;
  std::size_t trials;
  double budget_seconds;
  Json params;  // thresholds pinned here, independent of scenario defaults
};

std::vector<Criterion> criteria() {
  return {
      {1, "ice-exhaustive", 1, 1.0, {{"domain", 3}, {"max_length", 6}}},
      {2, "nasty-budget", 2000, 5.0, {{"n", 100}, {"eta", 0.2}, {"significance", 1e-3}}},
      {3,
       "amplify-concentration",
       1000,
       60.0,
       {{"k", 64}, {"n", 50}, {"domain", 64}, {"base_error", 0.1}, {"eta", 0.1}, {"delta", 0.05}}},
      {4,
       "badamplify",
       2000,
       120.0,
       {{"eps", 0.3},
        {"eta", 0.25},
        {"n", 60},
        {"k", 10},
        {"n_test", 40},
        {"bad_low", 0.25},
        {"bad_high", 0.35},
        {"mixture_threshold", 0.4},
        {"mixture_max_freq", 0.01}}},
      {5, "codes-suite", 50, 60.0, {{"w", 12}, {"rho", 0.5}, {"tau", 0.4}, {"oracle_max_w", 10}}},
      {6, "sep-learner", 200, 300.0, {{"slack", 1.25}, {"eps", 0.05}, {"success_freq", 0.95}}},
      {7, "sep-adversary", 2000, 120.0, {{"n", 500}, {"significance", 1e-3}, {"clean_freq", 0.99}}},
      {8, "round-lemma", 200, 5.0, {{"w", 200}, {"kappa", 0.6}, {"success_freq", 0.99}}},
      {9,
       "ice-coupling",
       500,
       10.0,
       {{"eta_nasty", 0.1}, {"eta_strong", 0.4}, {"min_n", 200}, {"max_n", 400}}},
      {10,
       "ice-learner",
       200,
       300.0,
       {{"w", 20}, {"d", 10}, {"eta", 0.05}, {"kappa", 0.7}, {"success_freq", 0.95}}},
      {11,
       "reduction-demo",
       2000,
       30.0,
       {{"points", 8},
        {"eta", 0.1},
        {"m", 400},
        {"tv_tolerance", 1e-12},
        {"significance", 1e-3}}},
  };
}

bool run(const Criterion& c, const std::string& out) {
  noisypac::ExperimentConfig cfg;
  cfg.scenario = c.scenario;
  cfg.trials = c.trials;
  cfg.seed = 1;
  cfg.params = c.params;
  auto t0 = std::chrono::steady_clock::now();
  noisypac::TrialReport rep = noisypac::run_scenario(cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.empty()) noisypac::write_report(rep, out);

  bool in_time = secs <= c.budget_seconds;
  bool ok = rep.passed() && in_time;
  for (const auto& v : rep.verdicts) {
    std::cout << "  [" << (v.passed ? "ok" : "failed") << "] " << v.name << ": " << v.detail
              << "\n";
  }
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.2fs of %.0fs budget", secs, c.budget_seconds);
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.scenario << ", "
            << timing << (in_time ? "" : ", over time") << ")" << std::endl;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisypac acceptance checks"};
  int only = 0;
  std::string out;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  app.add_option("--out", out, "directory for CSV/JSON reports");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    try {
      failed += !run(c, out);
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << c.id << " (" << c.scenario << "): " << e.what()
                << std::endl;
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
