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

#include "leggett/io.hpp"

#include <fstream>
#include <sstream>

#include "leggett/errors.hpp"

namespace leggett::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw FormatError(what + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number(x, what + " entry"));
  return out;
}

std::vector<UnitVector3> settings(const json& j, const char* key) {
  const json& arr = require(j, key);
  if (!arr.is_array()) throw FormatError(std::string(key) + " must be an array");
  std::vector<UnitVector3> out;
  for (const auto& v : arr) out.push_back(unit_vector_from_json(v));
  return out;
}

// C may be nested rows or a flat row-major array.
std::vector<double> table(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw FormatError("C must be an array");
  std::vector<double> out;
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != rows) throw FormatError("C row count does not match alice_settings");
    for (const auto& row : j) {
      const auto r = numbers(row, "C row");
      if (r.size() != cols) throw FormatError("C column count does not match bob_settings");
      out.insert(out.end(), r.begin(), r.end());
    }
  } else {
    out = numbers(j, "C");
    if (out.size() != rows * cols) throw FormatError("C has the wrong number of entries");
  }
  return out;
}

}  // namespace

json to_json(const UnitVector3& v) { return json::array({v.x(), v.y(), v.z()}); }

UnitVector3 unit_vector_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("a setting must be an [x, y, z] array");
  try {
    return UnitVector3::from_components(number(j[0], "x"), number(j[1], "y"), number(j[2], "z"));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const BinaryCorrelation& corr) {
  json alice = json::array(), bob = json::array(), c = json::array();
  for (const auto& a : corr.grid().alice()) alice.push_back(to_json(a));
  for (const auto& b : corr.grid().bob()) bob.push_back(to_json(b));
  for (std::size_t i = 0; i < corr.num_alice(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < corr.num_bob(); ++j) row.push_back(corr.c(i, j));
    c.push_back(std::move(row));
  }
  return {{"alice_settings", alice},
          {"bob_settings", bob},
          {"MA", corr.ma_values()},
          {"MB", corr.mb_values()},
          {"C", c}};
}

BinaryCorrelation correlation_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("correlation document must be a JSON object");
  std::vector<UnitVector3> alice = settings(j, "alice_settings");
  std::vector<UnitVector3> bob = settings(j, "bob_settings");
  if (alice.empty() || bob.empty()) throw FormatError("settings lists must be non-empty");
  SettingsGrid grid(std::move(alice), std::move(bob));
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();

  if (j.contains("P")) {
    const json& p = j.at("P");
    if (!p.is_array() || p.size() != na) throw FormatError("P must have one row per alice setting");
    std::vector<std::vector<OutcomeDistribution>> probs(na);
    for (std::size_t i = 0; i < na; ++i) {
      if (!p[i].is_array() || p[i].size() != nb) {
        throw FormatError("P rows must have one entry per bob setting");
      }
      for (std::size_t k = 0; k < nb; ++k) {
        const auto cell = numbers(p[i][k], "P cell");
        if (cell.size() != 4) throw FormatError("P cells must be [p++, p+-, p-+, p--]");
        OutcomeDistribution d;
        std::copy(cell.begin(), cell.end(), d.p.begin());
        probs[i].push_back(d);
      }
    }
    try {
      return from_probability_table(std::move(grid), probs);
    } catch (const SignalingError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }

  auto ma = numbers(require(j, "MA"), "MA");
  auto mb = numbers(require(j, "MB"), "MB");
  auto c = table(require(j, "C"), na, nb);
  if (ma.size() != na) throw FormatError("MA length does not match alice_settings");
  if (mb.size() != nb) throw FormatError("MB length does not match bob_settings");
  try {
    return BinaryCorrelation(std::move(grid), std::move(ma), std::move(mb), std::move(c));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const Certificate& cert) {
  json out{{"alpha", cert.alpha}, {"beta", cert.beta},   {"gamma", cert.gamma},
           {"value", cert.value}, {"bound", cert.bound}, {"margin", cert.margin}};
  if (cert.verification_margin) {
    out["verification"] = {{"pairs", cert.verification_pairs},
                           {"bound", *cert.verification_bound},
                           {"margin", *cert.verification_margin}};
  }
  return out;
}

json to_json(const FeasibilityVerdict& verdict) {
  json out{{"status", to_string(verdict.status)}};
  if (verdict.leggett_witness) {
    json comps = json::array();
    for (const auto& c : *verdict.leggett_witness) {
      comps.push_back(
          {{"u", to_json(c.u)}, {"v", to_json(c.v)}, {"weight", c.weight}, {"C", c.correlators}});
    }
    out["witness"] = {{"kind", "leggett"}, {"components", comps}};
  }
  if (verdict.local_witness) {
    json strategies = json::array();
    for (const auto& s : *verdict.local_witness) {
      strategies.push_back({{"alice", s.alice}, {"bob", s.bob}, {"weight", s.weight}});
    }
    out["witness"] = {{"kind", "local"}, {"strategies", strategies}};
  }
  if (verdict.certificate) {
    out["certificate"] = to_json(*verdict.certificate);
    out["margin"] = verdict.certificate->verification_margin.value_or(verdict.certificate->margin);
  }
  const auto& d = verdict.diagnostics;
  out["diagnostics"] = {{"iterations", d.iterations},
                        {"rounds", d.rounds},
                        {"max_residual", d.max_residual},
                        {"grid", {{"mode", d.grid_mode}, {"n", d.grid_pairs}}}};
  if (!d.note.empty()) out["diagnostics"]["note"] = d.note;
  return out;
}

json werner_model_to_json(double visibility, const QuadratureScheme& scheme) {
  json comps = json::array();
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    comps.push_back({{"u", to_json(scheme.nodes()[k])}, {"weight", scheme.weights()[k]}});
  }
  return {{"V", visibility}, {"components", comps}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

}  // namespace leggett::io
