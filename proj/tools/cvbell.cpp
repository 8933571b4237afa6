// Copyright 2026 The cvbell Authors
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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cvbell/commands.hpp"
#include "cvbell/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bell nonlocality and entanglement of two-mode Gaussian states"};
  app.require_subcommand(1);

  double r = 0.0;
  double thermal = 0.0;
  double eta = 1.0;
  std::string out_path;
  auto* tmsv = app.add_subcommand("tmsv", "Write a (noisy) two-mode squeezed vacuum state file");
  tmsv->add_option("--r", r, "Squeezing parameter")->required()->check(CLI::NonNegativeNumber);
  tmsv->add_option("--thermal", thermal, "Thermal occupation")->check(CLI::NonNegativeNumber);
  tmsv->add_option("--eta", eta, "Channel transmissivity")->check(CLI::Range(0.0, 1.0));
  tmsv->add_option("--out", out_path, "Output JSON path")->required();

  std::string input;
  bool oracle = false;
  bool json = false;
  auto* check = app.add_subcommand("check", "Analyze a state file");
  check->add_option("--input", input, "State JSON")->required();
  check->add_flag("--oracle", oracle, "Also run the numeric Bell maximization");
  check->add_flag("--json", json, "Emit JSON");

  std::string r_range;
  std::string thermal_range = "0";
  std::string eta_range = "1";
  std::string csv_path;
  auto* sweep = app.add_subcommand("sweep", "Tabulate noisy TMSV states over a parameter grid");
  sweep->add_option("--r", r_range, "Squeezing range A:B:S")->required();
  sweep->add_option("--thermal", thermal_range, "Thermal occupation range A:B:S");
  sweep->add_option("--eta", eta_range, "Transmissivity range A:B:S");
  sweep->add_option("--out", csv_path, "Output CSV path")->required();

  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double n_max = 3.0;
  unsigned threads = 0;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Randomized check that nonlocal states are entangled");
  verify->add_option("--samples", samples, "Number of sampled states")->required()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Sampler seed")->required();
  verify->add_option("--n-max", n_max, "Upper bound of local variances");
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
  verify->add_flag("--json", verify_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cvbell::exit_code::kUsage;
  }

  if (*tmsv) return cvbell::run_tmsv(r, thermal, eta, out_path, std::cout, std::cerr);
  if (*check) return cvbell::run_check(input, oracle, json, std::cout, std::cerr);
  if (*sweep) {
    cvbell::SweepConfig cfg;
    try {
      cfg.r = cvbell::parse_range(r_range);
      cfg.thermal = cvbell::parse_range(thermal_range);
      cfg.eta = cvbell::parse_range(eta_range);
    } catch (const cvbell::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cvbell::exit_code::kUsage;
    }
    cfg.out = csv_path;
    return cvbell::run_sweep(cfg, std::cout, std::cerr);
  }
  return cvbell::run_verify(samples, seed, n_max, verify_json, threads, std::cout, std::cerr);
}
