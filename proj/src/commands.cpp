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

#include "leggett/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <numbers>
#include <sstream>

#include "leggett/werner_model.hpp"
#include "leggett/errors.hpp"
#include "leggett/io.hpp"
#include "leggett/presets.hpp"

namespace leggett::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

const std::map<std::string, double>& tolerance_defaults() {
  static const std::map<std::string, double> defaults{
      {"quadrature", 5e-3}, {"positivity", kPositivityTolerance},
      {"threshold", 1e-6},  {"equality_slack", 1e-9},
      {"margin", 1e-7},     {"witness", 1e-8},
      {"weight_floor", 1e-12}};
  return defaults;
}

double tolerance(const RunConfig& config, const std::string& key) {
  const auto it = config.tolerances.find(key);
  return it != config.tolerances.end() ? it->second : tolerance_defaults().at(key);
}

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions o;
  o.equality_slack = tolerance(config, "equality_slack");
  o.margin_tolerance = tolerance(config, "margin");
  o.witness_tolerance = tolerance(config, "witness");
  o.weight_floor = tolerance(config, "weight_floor");
  return o;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

const char* error_kind(ExitCode code) {
  switch (code) {
    case ExitCode::kUsage: return "usage";
    case ExitCode::kIo: return "io";
    case ExitCode::kMalformedInput: return "malformed_input";
    case ExitCode::kInvalidInput: return "invalid_input";
    case ExitCode::kRegime: return "regime";
    case ExitCode::kCapExceeded: return "cap_exceeded";
    default: return "internal";
  }
}

Report error_report(ExitCode code, const std::string& message) {
  Report r;
  r.exit = code;
  r.body = {{"status", "error"}, {"error", {{"kind", error_kind(code)}, {"message", message}}}};
  return r;
}

bool matches_expectation(const std::string& expected, VerdictStatus got) {
  if (expected == "Feasible") return got == VerdictStatus::kFeasible;
  if (expected == "InfeasibleExact") return got == VerdictStatus::kInfeasibleExact;
  return is_infeasible(got);
}

}  // namespace

json to_json(const RunConfig& c) {
  json tol = json::object();
  for (const auto& [key, value] : tolerance_defaults()) tol[key] = value;
  for (const auto& [key, value] : c.tolerances) tol[key] = value;
  return {{"command", c.command},
          {"V", c.visibility},
          {"n", c.n},
          {"trials", c.trials},
          {"resolution", c.resolution},
          {"grid_mode", c.grid_mode ? json(to_string(*c.grid_mode)) : json(nullptr)},
          {"grid_n", c.grid_n ? json(*c.grid_n) : json(nullptr)},
          {"input", c.input},
          {"output", c.output},
          {"csv", c.csv},
          {"seed", c.seed},
          {"tolerances", tol}};
}

void add_tolerance(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidArgument("tolerance must be KEY=VAL: " + assignment);
  const std::string key = assignment.substr(0, eq);
  if (!tolerance_defaults().contains(key)) throw InvalidArgument("unknown tolerance key: " + key);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(assignment.substr(eq + 1), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != assignment.size() - eq - 1 || !(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("tolerance value must be a positive number: " + assignment);
  }
  config.tolerances[key] = value;
}

Report cmd_verify_werner(const RunConfig& config) {
  if (config.n < 1000) throw UsageError("verify-werner requires n >= 1000");
  if (config.trials == 0) throw UsageError("verify-werner requires trials >= 1");
  const double v = config.visibility;
  const QuadratureScheme scheme = fibonacci_grid(config.n);
  const LeggettModel model = build_werner_model(v, scheme);
  const double tol = tolerance(config, "quadrature");
  const double pos_tol = tolerance(config, "positivity");

  // Consecutive node pairs of a seeded uniform sample give the (a, b) trials.
  const QuadratureScheme samples = monte_carlo_grid(2 * config.trials, config.seed);
  double max_marginal = 0.0, max_correlator = 0.0;
  std::size_t violations = 0;
  std::ostringstream csv;
  csv.precision(17);
  csv << "trial,a_dot_b,marginal_deviation,correlator_deviation,violations\n";
  for (std::size_t k = 0; k < config.trials; ++k) {
    const UnitVector3& a = samples.nodes()[2 * k];
    const UnitVector3& b = samples.nodes()[2 * k + 1];
    const Moments m = model.moments(a, b);
    const double t = dot(a, b);
    const double dm = std::max(std::abs(m.ma), std::abs(m.mb));
    const double dc = std::abs(m.c + v * t);
    const std::size_t bad = model.count_positivity_violations(a, b, pos_tol);
    max_marginal = std::max(max_marginal, dm);
    max_correlator = std::max(max_correlator, dc);
    violations += bad;
    csv << k << ',' << t << ',' << dm << ',' << dc << ',' << bad << '\n';
  }
  const bool pass = max_marginal <= tol && max_correlator <= tol && violations == 0;
  Report r;
  r.body = {{"status", pass ? "pass" : "fail"},
            {"V", v},
            {"components", model.size()},
            {"declared_quadrature_tolerance", scheme.declared_tolerance()},
            {"tolerance", tol},
            {"max_marginal_deviation", max_marginal},
            {"max_correlator_deviation", max_correlator},
            {"positivity_violations", violations}};
  r.exit = pass ? ExitCode::kOk : ExitCode::kNegative;
  r.csv = csv.str();
  return r;
}

Report cmd_threshold_scan(const RunConfig& config) {
  if (config.resolution < 1000) throw UsageError("threshold-scan requires resolution >= 1000");
  const ThresholdScan scan = critical_visibility(config.resolution);
  const double closed = kCriticalVisibility;
  const double err = std::abs(scan.critical_visibility - closed);
  const bool match = err <= tolerance(config, "threshold");
  const double separable = 1.0 / 3.0;

  std::ostringstream csv;
  csv.precision(17);
  csv << "t,lower_slack,upper_slack\n";
  const std::size_t points = std::min<std::size_t>(config.resolution, 2001);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(points - 1);
    const ConditionSlack s = necessary_condition_slack(t, scan.critical_visibility);
    csv << t << ',' << s.lower << ',' << s.upper << '\n';
  }

  Report r;
  r.body = {{"status", match ? "pass" : "fail"},
            {"critical_visibility", scan.critical_visibility},
            {"closed_form", closed},
            {"abs_error", err},
            {"binding_t", scan.binding_t},
            {"binding_t_closed_form", 2.0 - 2.0 * std::numbers::sqrt2},
            {"min_slack", scan.min_slack},
            {"bisection_steps", scan.bisection_steps},
            {"entangled_compatible_window",
             {{"lower", separable},
              {"upper", scan.critical_visibility},
              {"non_empty", scan.critical_visibility > separable}}}};
  r.exit = match ? ExitCode::kOk : ExitCode::kNegative;
  r.csv = csv.str();
  return r;
}

Report cmd_classify_examples(const RunConfig& config) {
  const presets::GridOverride g{config.grid_mode, config.grid_n};
  const SolverOptions options = solver_options(config);
  json rows = json::array();
  json table = {{"leggett_compatible", {{"bell_local", json::array()}, {"bell_nonlocal", json::array()}}},
                {"leggett_incompatible", {{"bell_local", json::array()}, {"bell_nonlocal", json::array()}}}};
  bool undetermined = false, mismatch = false;
  for (const auto& ex : presets::classification_examples(g)) {
    const Classification c = classify(ex.target, ex.grid, options);
    const VerdictStatus ls = c.leggett.status, bs = c.bell.status;
    const bool ok = matches_expectation(ex.expected_leggett, ls) &&
                    matches_expectation(ex.expected_bell, bs);
    const bool open = ls == VerdictStatus::kUndetermined || bs == VerdictStatus::kUndetermined;
    undetermined = undetermined || open;
    mismatch = mismatch || !ok;
    rows.push_back({{"name", ex.name},
                    {"leggett", io::to_json(c.leggett)},
                    {"bell", io::to_json(c.bell)},
                    {"expected", {{"leggett", ex.expected_leggett}, {"bell", ex.expected_bell}}},
                    {"matches", ok},
                    {"undetermined", open}});
    if (!open) {
      const char* lk = ls == VerdictStatus::kFeasible ? "leggett_compatible" : "leggett_incompatible";
      const char* bk = bs == VerdictStatus::kFeasible ? "bell_local" : "bell_nonlocal";
      table[lk][bk].push_back(ex.name);
    }
  }
  Report r;
  r.body = {{"status", undetermined ? "undetermined" : (mismatch ? "mismatch" : "pass")},
            {"examples", rows},
            {"table", table}};
  r.exit = undetermined ? ExitCode::kUndetermined
                        : (mismatch ? ExitCode::kNegative : ExitCode::kOk);
  return r;
}

Report cmd_feasibility(const RunConfig& config) {
  if (config.input.empty()) throw UsageError("feasibility requires --input");
  const BinaryCorrelation target = io::correlation_from_json(io::read_json_file(config.input));
  const auto violations = validate(target, tolerance(config, "positivity"));
  if (!violations.empty()) {
    const auto& v = violations.front();
    return error_report(ExitCode::kInvalidInput,
                        "target violates positivity at setting pair (" + std::to_string(v.i) + "," +
                            std::to_string(v.j) + "), slack " + std::to_string(v.slack));
  }

  FeasibilityVerdict verdict;
  bool lp_run = false;
  if (auto shortcut = extremal_marginal_shortcut(target)) {
    verdict = std::move(*shortcut);
  } else {
    const GridMode mode = config.grid_mode.value_or(GridMode::kIndependentProduct);
    const std::size_t n = config.grid_n.value_or(mode == GridMode::kAntipodal ? 200 : 48);
    const std::size_t pairs = mode == GridMode::kAntipodal ? n : n * n + n;
    if (pairs > kMaxGridPairs) {
      throw CapExceeded("grid of " + std::to_string(pairs) + " pairs exceeds the cap of " +
                        std::to_string(kMaxGridPairs));
    }
    const HiddenVariableGrid grid = mode == GridMode::kAntipodal
                                        ? HiddenVariableGrid::antipodal(n)
                                        : HiddenVariableGrid::product(n, n);
    verdict = leggett_feasibility(target, grid, solver_options(config));
    lp_run = true;
  }
  Report r;
  r.body = {{"verdict", io::to_json(verdict)}, {"lp_run", lp_run}};
  switch (verdict.status) {
    case VerdictStatus::kFeasible: r.exit = ExitCode::kOk; break;
    case VerdictStatus::kUndetermined: r.exit = ExitCode::kUndetermined; break;
    default: r.exit = ExitCode::kNegative;
  }
  return r;
}

Report run(const RunConfig& config) {
  Report r;
  try {
    if (config.command == "verify-werner") {
      r = cmd_verify_werner(config);
    } else if (config.command == "threshold-scan") {
      r = cmd_threshold_scan(config);
    } else if (config.command == "classify-examples") {
      r = cmd_classify_examples(config);
    } else if (config.command == "feasibility") {
      r = cmd_feasibility(config);
    } else {
      r = error_report(ExitCode::kUsage, "unknown command: " + config.command);
    }
  } catch (const UsageError& e) {
    r = error_report(ExitCode::kUsage, e.what());
  } catch (const std::ios_base::failure& e) {
    r = error_report(ExitCode::kIo, e.what());
  } catch (const FormatError& e) {
    r = error_report(ExitCode::kMalformedInput, e.what());
  } catch (const SignalingError& e) {
    r = error_report(ExitCode::kInvalidInput, std::string("signaling input: ") + e.what());
  } catch (const PositivityViolation& e) {
    r = error_report(ExitCode::kInvalidInput, std::string("positivity violation: ") + e.what());
  } catch (const RegimeError& e) {
    r = error_report(ExitCode::kRegime, e.what());
  } catch (const CapExceeded& e) {
    r = error_report(ExitCode::kCapExceeded, e.what());
  } catch (const InvalidArgument& e) {
    r = error_report(ExitCode::kUsage, e.what());
  }
  json body = {{"format_version", kFormatVersion},
               {"generated_at", timestamp()},
               {"config", to_json(config)},
               {"exit_code", static_cast<int>(r.exit)}};
  body.update(r.body);
  r.body = std::move(body);
  return r;
}

ExitCode emit(const RunConfig& config, const Report& report) {
  const std::string text = report.body.dump(2) + "\n";
  try {
    if (config.output.empty()) {
      std::cout << text;
    } else {
      io::write_text_file(config.output, text);
    }
    if (!config.csv.empty() && !report.csv.empty()) io::write_text_file(config.csv, report.csv);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kIo;
  }
  return report.exit;
}

}  // namespace leggett::cli
