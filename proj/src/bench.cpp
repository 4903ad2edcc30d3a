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

#include "noisypac/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace noisypac {

namespace {

struct Entry {
  ScenarioInfo info;
  ScenarioBody body;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"ice-exhaustive", "ICE properties over every sample of length <= 6 on 3 points", 1, 1,
        Json{{"domain", 3}, {"max_length", 6}}},
       scenario_ice_exhaustive},
      {{"ice-filter-unit", "ICE properties on random samples", 0, 100,
        Json{{"domain", 8}, {"max_length", 40}}},
       scenario_ice_filter_unit},
      {{"nasty-budget", "Realized nasty budgets against Bin(n, eta)", 2, 2000,
        Json{{"n", 100}, {"eta", 0.2}, {"significance", 1e-3}}},
       scenario_nasty_budget},
      {{"amplify-concentration", "Sum of group errors inside Amplify under nasty noise", 3, 1000,
        Json{{"k", 64},
             {"n", 50},
             {"domain", 64},
             {"base_error", 0.1},
             {"eta", 0.1},
             {"delta", 0.05}}},
       scenario_amplify_concentration},
      {{"badamplify", "Holdout selection versus uniform mixing under nasty noise", 4, 2000,
        Json{{"eps", 0.3},
             {"eta", 0.25},
             {"n", 60},
             {"k", 10},
             {"n_test", 40},
             {"force_heads", false},
             {"bad_low", 0.25},
             {"bad_high", 0.35},
             {"mixture_threshold", 0.4},
             {"mixture_max_freq", 0.01}}},
       scenario_badamplify},
      {{"codes-suite", "Erasure round trips, bit-flip oracle and low-weight enumeration", 5, 50,
        Json{{"w", 12}, {"rho", 0.5}, {"tau", 0.4}, {"oracle_max_w", 10}}},
       scenario_codes_suite},
      {{"sep-learner", "Erasure-decoding learner against key-erasing strong malicious noise", 6,
        200,
        Json{{"w", 24},
             {"d", 12},
             {"u", 8},
             {"ell", 12},
             {"eta_n", 0.25},
             {"eta_m", 0.1},
             {"rho", 0.5},
             {"tau", 0.4},
             {"kappa", 0.5},
             {"n", 0},
             {"slack", 1.25},
             {"eps", 0.05},
             {"success_freq", 0.95}}},
       scenario_sep_learner},
      {{"sep-adversary", "Information-freeness of the nasty key side and its simulation", 7,
        2000,
        Json{{"w", 24},
             {"d", 12},
             {"u", 8},
             {"ell", 12},
             {"eta_n", 0.25},
             {"eta_m", 0.1},
             {"rho", 0.5},
             {"tau", 0.4},
             {"kappa", 0.5},
             {"n", 500},
             {"significance", 1e-3},
             {"clean_freq", 0.99}}},
       scenario_sep_adversary},
      {{"round-lemma", "Randomized rounding Hamming bound", 8, 200,
        Json{{"w", 200}, {"kappa", 0.6}, {"success_freq", 0.99}}},
       scenario_round_lemma},
      {{"ice-coupling", "Nasty noise realized by strong malicious noise behind ICE", 9, 500,
        Json{{"eta_nasty", 0.1}, {"eta_strong", 0.4}, {"min_n", 200}, {"max_n", 400}}},
       scenario_ice_coupling},
      {{"ice-learner", "ICE learner key recovery and idealized adversary survivors", 10, 200,
        Json{{"w", 20},
             {"d", 10},
             {"eta", 0.05},
             {"kappa", 0.7},
             {"n", 0},
             {"success_freq", 0.95}}},
       scenario_ice_learner},
      {{"reduction-demo", "Huber as malicious noise and fixed-rate tracking of nasty noise", 11,
        2000,
        Json{{"points", 8},
             {"eta", 0.1},
             {"m", 400},
             {"huber_eta", 0.2},
             {"huber_samples", 100000},
             {"tv_tolerance", 1e-12},
             {"significance", 1e-3}}},
       scenario_reduction_demo},
  };
  return entries;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& e : registry()) {
    if (e.info.id == id) return e;
  }
  throw std::invalid_argument("unknown scenario id: " + id);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig c;
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw std::invalid_argument("config needs a string \"scenario\"");
  }
  c.scenario = j["scenario"].get<std::string>();
  find_entry(c.scenario);
  for (const auto& [key, value] : j.items()) {
    if (key == "scenario") continue;
    if (key == "params") {
      if (!value.is_object()) throw std::invalid_argument("\"params\" must be an object");
      c.params = value;
    } else if (key == "trials") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw std::invalid_argument("\"trials\" must be a positive integer");
      }
      c.trials = value.get<std::size_t>();
    } else if (key == "seed") {
      if (!value.is_number_integer()) throw std::invalid_argument("\"seed\" must be an integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      c.out = value.get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return c;
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["params"] = params;
  j["trials"] = trials;
  j["seed"] = seed;
  if (!out.empty()) j["out"] = out;
  return j;
}

// ---------------------------------------------------------------------------
// Context

double ScenarioContext::num(const char* key) const {
  if (!params.contains(key)) throw std::invalid_argument(std::string("missing parameter ") + key);
  return params.at(key).get<double>();
}

std::size_t ScenarioContext::count(const char* key) const {
  double v = num(key);
  if (v < 0 || v != std::floor(v)) {
    throw std::invalid_argument(std::string("parameter must be a non-negative integer: ") + key);
  }
  return static_cast<std::size_t>(v);
}

bool ScenarioContext::flag(const char* key) const {
  if (!params.contains(key)) throw std::invalid_argument(std::string("missing parameter ") + key);
  return params.at(key).get<bool>();
}

// ---------------------------------------------------------------------------
// Registry and runner

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ScenarioInfo& find_scenario(const std::string& id) { return find_entry(id).info; }

TrialReport run_scenario(const ExperimentConfig& config) {
  const Entry& entry = find_entry(config.scenario);
  ScenarioContext ctx;
  ctx.params = entry.info.default_params;
  for (const auto& [key, value] : config.params.items()) {
    if (!ctx.params.contains(key)) {
      throw std::invalid_argument("unknown parameter for " + config.scenario + ": " + key);
    }
    ctx.params[key] = value;
  }
  ctx.trials = config.trials == 0 ? entry.info.default_trials : config.trials;
  if (ctx.trials < 1) throw std::invalid_argument("trial count must be at least 1");
  ctx.rng = RngHandle{config.seed, 0};
  TrialReport report = entry.body(ctx);
  report.scenario = config.scenario;
  report.config = Json{{"scenario", config.scenario},
                       {"seed", config.seed},
                       {"trials", ctx.trials},
                       {"params", ctx.params}};
  return report;
}

// ---------------------------------------------------------------------------
// Reports

bool TrialReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

Json TrialReport::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = scenario;
  j["config"] = config;
  j["records"] = rows.size();
  j["columns"] = columns;
  j["aggregates"] = aggregates;
  j["flags"] = flags;
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    vs.push_back(Json{{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  j["verdicts"] = vs;
  j["passed"] = passed();
  return j;
}

std::string TrialReport::to_csv() const {
  std::ostringstream os;
  os << "# noisypac trial records, schema " << kSchemaVersion << ", scenario " << scenario
     << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

void write_report(const TrialReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(out_dir / (report.scenario + ".csv"));
    if (!f) throw std::runtime_error("cannot write CSV report");
    f << report.to_csv();
  }
  std::ofstream f(out_dir / (report.scenario + ".json"));
  if (!f) throw std::runtime_error("cannot write JSON report");
  f << report.to_json().dump(2) << '\n';
}

std::string render_report(const Json& report) {
  std::ostringstream os;
  os << "scenario: " << report.value("scenario", std::string("?")) << '\n';
  if (report.contains("config")) {
    const auto& c = report["config"];
    os << "seed: " << c.value("seed", 0ULL) << "  trials: " << c.value("trials", 0ULL) << '\n';
  }
  os << "records: " << report.value("records", 0ULL) << '\n';
  if (report.contains("aggregates")) {
    os << "aggregates:\n";
    for (const auto& [k, v] : report["aggregates"].items()) os << "  " << k << ": " << v.dump() << '\n';
  }
  if (report.contains("flags") && !report["flags"].empty()) {
    os << "flags:\n";
    for (const auto& [k, v] : report["flags"].items()) os << "  " << k << ": " << v.dump() << '\n';
  }
  if (report.contains("verdicts")) {
    os << "verdicts:\n";
    for (const auto& v : report["verdicts"]) {
      os << "  [" << (v.value("passed", false) ? "PASS" : "FAIL") << "] "
         << v.value("name", std::string()) << ": " << v.value("detail", std::string()) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Trial parallelism

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace noisypac
