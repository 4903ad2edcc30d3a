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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisypac/bench.hpp"
#include "noisypac/codes.hpp"

namespace {

using noisypac::Json;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string bits_text(std::uint64_t bits, std::size_t length) {
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s += ((bits >> i) & 1U) ? '1' : '0';
  return s;
}

// --param key=value; the value is parsed as JSON when possible.
void apply_params(Json& params, const std::vector<std::string>& items) {
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--param expects key=value, got " + item);
    }
    std::string key = item.substr(0, eq), text = item.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    params[key] = value.is_discarded() ? Json(text) : value;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisypac: noise-model learning experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string config_path, out_dir;
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--trials", trials, "Trial count (overrides the scenario default)");
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--out", out_dir, "Directory for the CSV and JSON reports");

  auto* run = app.add_subcommand("run", "Run a scenario");
  std::string scenario;
  std::vector<std::string> params;
  run->add_option("scenario", scenario, "Scenario id");
  run->add_option("--param,-p", params, "Parameter override key=value");

  auto* list = app.add_subcommand("list-scenarios", "List scenario ids");

  auto* codes = app.add_subcommand("codes", "Linear code utilities");
  codes->require_subcommand(1);
  codes->fallthrough();
  auto* gen = codes->add_subcommand("gen", "Draw a random full-rank generator matrix");
  double rho = 0.5;
  std::size_t w = 24;
  std::string code_out;
  gen->add_option("--rho", rho, "Rate")->required();
  gen->add_option("--w", w, "Code length")->required();
  gen->add_option("--file", code_out, "Output file (stdout if omitted)");

  auto* decode = codes->add_subcommand("decode", "List-decode a received word");
  std::string code_file, word;
  std::size_t radius = 0, cap = 1024;
  decode->add_option("--code", code_file, "Generator file")->required();
  decode->add_option("--word", word, "Received word over + - ?")->required();
  auto* radius_opt = decode->add_option("--radius", radius, "Bit-flip radius (erasure mode if omitted)");
  decode->add_option("--cap", cap, "List size cap");

  auto* report = app.add_subcommand("report", "Report utilities");
  report->require_subcommand(1);
  auto* render = report->add_subcommand("render", "Print a JSON report as text");
  std::string report_path;
  render->add_option("report", report_path, "Report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      noisypac::ExperimentConfig cfg;
      if (!config_path.empty()) {
        cfg = noisypac::ExperimentConfig::from_json(Json::parse(read_file(config_path)));
      }
      if (!scenario.empty()) {
        noisypac::find_scenario(scenario);
        cfg.scenario = scenario;
      }
      if (cfg.scenario.empty()) throw std::invalid_argument("no scenario given");
      apply_params(cfg.params, params);
      if (app.count("--seed")) cfg.seed = seed;
      if (app.count("--trials")) {
        if (trials < 1) throw std::invalid_argument("--trials must be at least 1");
        cfg.trials = trials;
      }
      if (!out_dir.empty()) cfg.out = out_dir;
      noisypac::TrialReport rep = noisypac::run_scenario(cfg);
      if (!cfg.out.empty()) noisypac::write_report(rep, cfg.out);
      std::cout << noisypac::render_report(rep.to_json());
      return rep.passed() ? 0 : 2;
    }
    if (*list) {
      for (const auto& s : noisypac::list_scenarios()) {
        std::cout << s.id << "\tcriterion " << s.criterion << "\ttrials " << s.default_trials
                  << "\t" << s.summary << '\n';
      }
      return 0;
    }
    if (*gen) {
      auto g = noisypac::gen_random_linear_code(rho, w, noisypac::RngHandle{app.count("--seed") ? seed : 1, 0});
      std::string text = noisypac::to_hex_text(g);
      if (code_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(code_out);
        if (!f) throw std::runtime_error("cannot write " + code_out);
        f << text;
      }
      return 0;
    }
    if (*decode) {
      auto g = noisypac::from_hex_text(read_file(code_file));
      auto r = noisypac::parse_received(word);
      std::vector<noisypac::Message> msgs =
          radius_opt->count() ? noisypac::bitflip_list_decode(g, r, radius, cap)
                              : noisypac::erasure_list_decode(g, r, cap);
      std::cout << msgs.size() << " message(s)\n";
      for (const auto& m : msgs) {
        auto c = noisypac::encode(g, m);
        std::cout << bits_text(m.bits, m.length) << "  "
                  << noisypac::format_received(noisypac::received_from(c)) << '\n';
      }
      return 0;
    }
    if (*render) {
      std::cout << noisypac::render_report(Json::parse(read_file(report_path)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
