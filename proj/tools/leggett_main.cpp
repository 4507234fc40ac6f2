// Copyright 2026 The Leggett Toolkit Authors
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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leggett/commands.hpp"
#include "leggett/errors.hpp"

int main(int argc, char** argv) {
  using leggett::cli::ExitCode;
  leggett::cli::RunConfig config;
  std::string grid_mode;
  std::size_t grid_n = 0;
  std::vector<std::string> tolerances;

  CLI::App app{"Leggett crypto-nonlocality toolkit"};
  app.add_option("command", config.command,
                 "verify-werner | threshold-scan | classify-examples | feasibility")
      ->required()
      ->check(CLI::IsMember({"verify-werner", "threshold-scan", "classify-examples", "feasibility"}));
  app.add_option("--V", config.visibility, "Werner visibility")->capture_default_str();
  app.add_option("--n", config.n, "quadrature size")->capture_default_str();
  app.add_option("--trials", config.trials, "random setting pairs")->capture_default_str();
  app.add_option("--resolution", config.resolution, "t-grid resolution")->capture_default_str();
  app.add_option("--grid-mode", grid_mode, "hidden-variable grid mode")
      ->check(CLI::IsMember({"antipodal", "product"}));
  app.add_option("--grid-n", grid_n, "Fibonacci lattice size of the grid")->check(CLI::PositiveNumber);
  app.add_option("--input", config.input, "correlation JSON file");
  app.add_option("--output", config.output, "report path (default stdout)");
  app.add_option("--csv", config.csv, "CSV projection of sweep data");
  app.add_option("--seed", config.seed, "random seed")->capture_default_str();
  app.add_option("--tolerance", tolerances, "KEY=VAL override (repeatable)");

  try {
    app.parse(argc, argv);
    for (const auto& t : tolerances) leggett::cli::add_tolerance(config, t);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  } catch (const leggett::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  }
  if (!grid_mode.empty()) {
    config.grid_mode =
        grid_mode == "antipodal" ? leggett::GridMode::kAntipodal : leggett::GridMode::kIndependentProduct;
  }
  if (grid_n > 0) config.grid_n = grid_n;

  const leggett::cli::Report report = leggett::cli::run(config);
  if (report.body.value("status", "") == "error") {
    std::cerr << "error: " << report.body["error"]["message"].get<std::string>() << '\n';
  }
  return static_cast<int>(leggett::cli::emit(config, report));
}
