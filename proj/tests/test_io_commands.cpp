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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "leggett/commands.hpp"
#include "leggett/errors.hpp"
#include "leggett/io.hpp"
#include "leggett/presets.hpp"

using namespace leggett;
using cli::ExitCode;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "leggett_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_doc(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

cli::RunConfig config(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  return c;
}

json without_timestamp(json j) {
  j.erase("generated_at");
  return j;
}

}  // namespace

TEST(Json, CorrelationRoundTrip) {
  const SettingsGrid s(presets::equatorial_settings(), presets::well_spread_settings(3));
  const auto w = werner_correlation(0.4, s);
  const auto back = io::correlation_from_json(json::parse(io::to_json(w).dump()));
  EXPECT_EQ(back.grid().num_alice(), 4u);
  for (std::size_t k = 0; k < w.c_values().size(); ++k) {
    EXPECT_DOUBLE_EQ(back.c_values()[k], w.c_values()[k]);
  }
  EXPECT_NEAR(dot(back.grid().bob()[2], s.bob()[2]), 1.0, 1e-15);
}

TEST(Json, AcceptsFlatCAndRawProbabilities) {
  const auto flat = io::correlation_from_json(json::parse(
      R"({"alice_settings":[[1,0,0],[0,1,0]],"bob_settings":[[1,0,0]],"MA":[0,0],"MB":[0],"C":[0.5,-0.5]})"));
  EXPECT_EQ(flat.c(1, 0), -0.5);
  const auto raw = io::correlation_from_json(json::parse(
      R"({"alice_settings":[[0,0,1]],"bob_settings":[[0,0,1]],"P":[[[0.5,0,0,0.5]]]})"));
  EXPECT_DOUBLE_EQ(raw.c(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(raw.ma(0), 0.0);
}

TEST(Json, RejectsMalformedAndSignalingDocuments) {
  EXPECT_THROW(io::correlation_from_json(json::parse(R"({"alice_settings":[[1,0,0]]})")), FormatError);
  EXPECT_THROW(io::correlation_from_json(json::parse(
                   R"({"alice_settings":[[0,0,0]],"bob_settings":[[1,0,0]],"MA":[0],"MB":[0],"C":[[0]]})")),
               FormatError);
  EXPECT_THROW(io::correlation_from_json(json::parse(
                   R"({"alice_settings":[[1,0,0]],"bob_settings":[[1,0,0]],"MA":[0,1],"MB":[0],"C":[[0]]})")),
               FormatError);
  EXPECT_THROW(io::correlation_from_json(json::parse(
                   R"({"alice_settings":[[1,0,0]],"bob_settings":[[1,0,0],[0,1,0]],
                       "P":[[[0.25,0.25,0.25,0.25],[0.5,0.25,0.125,0.125]]]})")),
               SignalingError);
}

TEST(Json, VerdictAndModelShapes) {
  const auto ex = presets::pr_box();
  const auto v = io::to_json(leggett_feasibility(ex.target, ex.grid));
  EXPECT_EQ(v["status"], "Feasible");
  EXPECT_TRUE(v.contains("witness"));
  EXPECT_FALSE(v.contains("certificate"));
  EXPECT_EQ(v["diagnostics"]["grid"]["mode"], "product");
  const auto b = io::to_json(bell_local_membership(ex.target));
  EXPECT_EQ(b["status"], "InfeasibleExact");
  EXPECT_DOUBLE_EQ(b["margin"].get<double>(), 2.0);
  const auto m = io::werner_model_to_json(0.5, fibonacci_grid(10));
  EXPECT_EQ(m["components"].size(), 10u);
  EXPECT_DOUBLE_EQ(m["V"].get<double>(), 0.5);
}

TEST(Config, ToleranceOverrides) {
  auto c = config("threshold-scan");
  cli::add_tolerance(c, "threshold=1e-3");
  EXPECT_DOUBLE_EQ(c.tolerances.at("threshold"), 1e-3);
  EXPECT_THROW(cli::add_tolerance(c, "nonsense=1"), InvalidArgument);
  EXPECT_THROW(cli::add_tolerance(c, "threshold=abc"), InvalidArgument);
  EXPECT_THROW(cli::add_tolerance(c, "threshold"), InvalidArgument);
  EXPECT_EQ(cli::to_json(c)["tolerances"]["threshold"], 1e-3);
}

TEST(Commands, VerifyWernerExitCodes) {
  auto c = config("verify-werner");
  c.visibility = 0.0;
  c.n = 1000;
  c.trials = 10;
  const auto ok = cli::run(c);
  EXPECT_EQ(ok.exit, ExitCode::kOk);
  EXPECT_LE(ok.body["max_correlator_deviation"].get<double>(), 5e-3);
  EXPECT_EQ(ok.body["positivity_violations"], 0);
  EXPECT_EQ(ok.body["format_version"], cli::kFormatVersion);
  EXPECT_EQ(ok.body["config"]["trials"], 10);
  c.visibility = 0.9;
  EXPECT_EQ(cli::run(c).exit, ExitCode::kRegime);
  c.visibility = 0.5;
  c.n = 999;
  EXPECT_EQ(cli::run(c).exit, ExitCode::kUsage);
}

TEST(Commands, ThresholdScanConvergesAcrossResolutions) {
  auto c = config("threshold-scan");
  c.resolution = 1000;
  const auto coarse = cli::run(c);
  c.resolution = 1000000;
  const auto fine = cli::run(c);
  EXPECT_EQ(fine.exit, ExitCode::kOk);
  EXPECT_TRUE(fine.body["entangled_compatible_window"]["non_empty"].get<bool>());
  EXPECT_NEAR(coarse.body["critical_visibility"].get<double>(),
              fine.body["critical_visibility"].get<double>(), 1e-4);
  EXPECT_EQ(fine.csv.substr(0, 24), "t,lower_slack,upper_slac");
  c.resolution = 10;
  EXPECT_EQ(cli::run(c).exit, ExitCode::kUsage);
}

TEST(Commands, FeasibilityExitCodes) {
  const SettingsGrid s(presets::well_spread_settings(6), presets::well_spread_settings(6));
  auto c = config("feasibility");

  c.input = write_doc("werner05.json", io::to_json(werner_correlation(0.5, s)).dump());
  c.grid_mode = GridMode::kAntipodal;
  c.grid_n = 200;
  auto r = cli::run(c);
  EXPECT_EQ(r.exit, ExitCode::kOk);
  EXPECT_EQ(r.body["verdict"]["status"], "Feasible");
  EXPECT_TRUE(r.body["lp_run"].get<bool>());

  const SettingsGrid xy({UnitVector3::ex(), UnitVector3::ey()}, {UnitVector3::ex()});
  c.input = write_doc("det.json", io::to_json(deterministic_correlation(xy)).dump());
  r = cli::run(c);
  EXPECT_EQ(r.exit, ExitCode::kNegative);
  EXPECT_EQ(r.body["verdict"]["status"], "InfeasibleExact");
  EXPECT_FALSE(r.body["lp_run"].get<bool>());

  c.input = write_doc("sig.json", R"({"alice_settings":[[1,0,0]],"bob_settings":[[1,0,0],[0,1,0]],
      "P":[[[0.25,0.25,0.25,0.25],[0.5,0.25,0.125,0.125]]]})");
  r = cli::run(c);
  EXPECT_EQ(r.exit, ExitCode::kInvalidInput);
  EXPECT_NE(r.body["error"]["message"].get<std::string>().find("signaling"), std::string::npos);

  c.input = write_doc("pos.json",
                      R"({"alice_settings":[[1,0,0]],"bob_settings":[[1,0,0]],"MA":[0.9],"MB":[0.9],"C":[[0]]})");
  EXPECT_EQ(cli::run(c).exit, ExitCode::kInvalidInput);

  c.input = write_doc("bad.json", "{\"alice_settings\": [");
  EXPECT_EQ(cli::run(c).exit, ExitCode::kMalformedInput);

  c.input = (scratch_dir() / "missing.json").string();
  EXPECT_EQ(cli::run(c).exit, ExitCode::kIo);

  c.input = write_doc("werner05.json", io::to_json(werner_correlation(0.5, s)).dump());
  c.grid_mode = GridMode::kIndependentProduct;
  c.grid_n = 1000;
  EXPECT_EQ(cli::run(c).exit, ExitCode::kCapExceeded);

  c.input.clear();
  EXPECT_EQ(cli::run(c).exit, ExitCode::kUsage);
}

TEST(Commands, FeasibilityUndeterminedWithoutCertificateOrWitness) {
  // A margin tolerance above any attainable margin leaves an infeasible
  // target with neither a certificate nor a witness.
  const SettingsGrid s(presets::well_spread_settings(6), presets::well_spread_settings(6));
  auto c = config("feasibility");
  c.input = write_doc("werner099.json", io::to_json(werner_correlation(0.99, s)).dump());
  c.grid_mode = GridMode::kAntipodal;
  c.grid_n = 30;
  c.tolerances["margin"] = 100.0;
  const auto r = cli::run(c);
  EXPECT_EQ(r.exit, ExitCode::kUndetermined);
  EXPECT_EQ(r.body["verdict"]["status"], "Undetermined");
}

TEST(Commands, ClassifyExamplesTable) {
  const auto r = cli::run(config("classify-examples"));
  EXPECT_EQ(r.exit, ExitCode::kOk);
  EXPECT_EQ(r.body["status"], "pass");
  const auto& t = r.body["table"];
  EXPECT_EQ(t["leggett_compatible"]["bell_local"], json::array({"fully_random"}));
  EXPECT_EQ(t["leggett_compatible"]["bell_nonlocal"], json::array({"singlet_equatorial", "pr_box"}));
  EXPECT_EQ(t["leggett_incompatible"]["bell_local"], json::array({"deterministic"}));
  EXPECT_EQ(t["leggett_incompatible"]["bell_nonlocal"], json::array({"werner_0.99_well_spread"}));
}

TEST(Commands, UnknownCommandIsUsageError) { EXPECT_EQ(cli::run(config("plot")).exit, ExitCode::kUsage); }

TEST(Commands, ReportsAreReproducibleUnderFixedSeed) {
  auto c = config("verify-werner");
  c.n = 2000;
  c.trials = 7;
  c.seed = 99;
  const auto a = cli::run(c), b = cli::run(c);
  EXPECT_EQ(without_timestamp(a.body).dump(), without_timestamp(b.body).dump());
  EXPECT_EQ(a.csv, b.csv);
  c.seed = 100;
  EXPECT_NE(without_timestamp(cli::run(c).body).dump(), without_timestamp(a.body).dump());

  const auto k1 = cli::run(config("classify-examples")), k2 = cli::run(config("classify-examples"));
  EXPECT_EQ(without_timestamp(k1.body).dump(), without_timestamp(k2.body).dump());
}

TEST(Commands, EmitWritesReportAndCsv) {
  auto c = config("threshold-scan");
  c.resolution = 1000;
  c.output = (scratch_dir() / "scan.json").string();
  c.csv = (scratch_dir() / "scan.csv").string();
  EXPECT_EQ(cli::emit(c, cli::run(c)), ExitCode::kOk);
  const auto doc = io::read_json_file(c.output);
  EXPECT_TRUE(doc.contains("generated_at"));
  EXPECT_TRUE(std::filesystem::file_size(c.csv) > 100);
  c.output = "/nonexistent-dir/report.json";
  EXPECT_EQ(cli::emit(c, cli::run(c)), ExitCode::kIo);
}
