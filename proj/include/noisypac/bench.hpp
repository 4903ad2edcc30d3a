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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "noisypac/rng.hpp"

namespace noisypac {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string scenario;
  Json params = Json::object();
  std::size_t trials = 0;  // 0 selects the scenario default
  std::uint64_t seed = 1;
  std::string out;

  // Schema: {"scenario": str, "params": obj, "trials": int, "seed": int,
  // "out": str}. Only "scenario" is required.
  static ExperimentConfig from_json(const Json& j);
  Json to_json() const;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TrialReport {
  static constexpr int kSchemaVersion = 1;

  std::string scenario;
  Json config = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json aggregates = Json::object();
  Json flags = Json::object();
  std::vector<Verdict> verdicts;

  bool passed() const;
  Json to_json() const;
  std::string to_csv() const;
};

struct ScenarioInfo {
  std::string id;
  std::string summary;
  int criterion = 0;  // acceptance criterion number, 0 if none
  std::size_t default_trials = 1;
  Json default_params = Json::object();
};

// Parameters and randomness handed to a scenario body.
struct ScenarioContext {
  Json params;
  std::size_t trials = 1;
  RngHandle rng;

  double num(const char* key) const;
  std::size_t count(const char* key) const;
  bool flag(const char* key) const;
};

using ScenarioBody = std::function<TrialReport(const ScenarioContext&)>;

const std::vector<ScenarioInfo>& list_scenarios();
const ScenarioInfo& find_scenario(const std::string& id);

TrialReport run_scenario(const ExperimentConfig& config);

// Writes <out>/<scenario>.csv and <out>/<scenario>.json.
void write_report(const TrialReport& report, const std::filesystem::path& out_dir);

// Plain-text summary of a report JSON document.
std::string render_report(const Json& report);

// Runs body(i) for i in [0, count) on worker threads. Results must be
// written to per-index slots so assembly stays order-stable.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Scenario bodies, grouped by source file.
TrialReport scenario_ice_exhaustive(const ScenarioContext& ctx);
TrialReport scenario_ice_filter_unit(const ScenarioContext& ctx);
TrialReport scenario_nasty_budget(const ScenarioContext& ctx);
TrialReport scenario_amplify_concentration(const ScenarioContext& ctx);
TrialReport scenario_badamplify(const ScenarioContext& ctx);
TrialReport scenario_reduction_demo(const ScenarioContext& ctx);
TrialReport scenario_codes_suite(const ScenarioContext& ctx);
TrialReport scenario_sep_learner(const ScenarioContext& ctx);
TrialReport scenario_sep_adversary(const ScenarioContext& ctx);
TrialReport scenario_round_lemma(const ScenarioContext& ctx);
TrialReport scenario_ice_coupling(const ScenarioContext& ctx);
TrialReport scenario_ice_learner(const ScenarioContext& ctx);

}  // namespace noisypac
