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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "leggett/membership.hpp"

namespace leggett::cli {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "leggett-report/1";
inline constexpr std::uint64_t kDefaultSeed = 20260101;
/// Largest hidden-variable grid a feasibility run will build.
inline constexpr std::size_t kMaxGridPairs = 250000;

enum class ExitCode : int {
  kOk = 0,
  kNegative = 1,  ///< infeasible verdict or failed check
  kUndetermined = 2,
  kUsage = 3,
  kIo = 4,
  kMalformedInput = 5,
  kInvalidInput = 6,  ///< signaling or positivity-violating target
  kRegime = 7,
  kCapExceeded = 8,
};

struct RunConfig {
  std::string command;
  double visibility = 0.8;
  std::size_t n = 100000;
  std::size_t trials = 50;
  std::size_t resolution = 1000000;
  std::optional<GridMode> grid_mode;
  std::optional<std::size_t> grid_n;
  std::string input;
  std::string output;
  std::string csv;
  std::uint64_t seed = kDefaultSeed;
  /// Keys: quadrature, positivity, threshold, equality_slack, margin,
  /// witness, weight_floor.
  std::map<std::string, double> tolerances;
};

json to_json(const RunConfig& config);

/// Parses "KEY=VAL" into config.tolerances; throws InvalidArgument for an
/// unknown key or a non-numeric value.
void add_tolerance(RunConfig& config, const std::string& assignment);

struct Report {
  json body;
  ExitCode exit = ExitCode::kOk;
  /// Optional CSV projection of sweep data; empty when not produced.
  std::string csv;
};

Report cmd_verify_werner(const RunConfig& config);
Report cmd_threshold_scan(const RunConfig& config);
Report cmd_classify_examples(const RunConfig& config);
Report cmd_feasibility(const RunConfig& config);

/// Dispatches on config.command and turns every toolkit error into a report
/// with the matching exit code. Adds format_version, the resolved config and
/// a generated_at timestamp.
Report run(const RunConfig& config);

/// Writes the report to config.output (or stdout) and the CSV to config.csv.
/// Returns kIo if a file cannot be written.
ExitCode emit(const RunConfig& config, const Report& report);

}  // namespace leggett::cli
