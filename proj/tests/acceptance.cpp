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

// Acceptance gate: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "leggett/werner_model.hpp"
#include "leggett/commands.hpp"
#include "leggett/correlation.hpp"
#include "leggett/membership.hpp"
#include "leggett/presets.hpp"
#include "oracles.hpp"

using namespace leggett;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %d. %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class F>
void criterion(int id, const char* name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  double limit = 0.0;
  try {
    pass = body(detail, limit);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0.0 && s > limit) {
    pass = false;
    detail += "; runtime over " + std::to_string(limit) + " s";
  }
  report(id, name, pass, detail, s);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Worst probability deviation of a Leggett witness, expanded component by
// component without solver code.
double witness_error(const FeasibilityVerdict& v, const BinaryCorrelation& target) {
  const auto& s = target.grid();
  const std::size_t nb = s.num_bob();
  double worst = 0.0, total = 0.0;
  for (const auto& c : *v.leggett_witness) total += c.weight;
  worst = std::abs(total - 1.0);
  for (std::size_t i = 0; i < s.num_alice(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      std::array<double, 4> mixed{};
      for (const auto& c : *v.leggett_witness) {
        const auto p = oracle::probabilities(oracle::dot3(oracle::v3(c.u), oracle::v3(s.alice()[i])),
                                             oracle::dot3(oracle::v3(c.v), oracle::v3(s.bob()[j])),
                                             c.correlators[i * nb + j]);
        for (int k = 0; k < 4; ++k) {
          if (p[k] < -1e-9) return INFINITY;
          mixed[k] += c.weight * p[k];
        }
      }
      const auto ref = oracle::probabilities(target.ma(i), target.mb(j), target.c(i, j));
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(mixed[k] - ref[k]));
    }
  }
  return worst;
}

}  // namespace

int main() {
  const double v_star = (1.0 + 1.0 / std::numbers::sqrt2) / 2.0;

  criterion(1, "threshold reproduction", [&](std::string& d, double& limit) {
    limit = 10.0;
    cli::RunConfig c;
    c.command = "threshold-scan";
    c.resolution = 1000000;
    const auto r = cli::run(c);
    const double v = r.body.at("critical_visibility").get<double>();
    d = fmt("V* = %.10f, |V* - closed form| = %.2e (tol 1e-6)", v, std::abs(v - v_star));
    return r.exit == cli::ExitCode::kOk && std::abs(v - v_star) <= 1e-6;
  });

  criterion(2, "half-norm identity", [&](std::string& d, double& limit) {
    limit = 30.0;
    const auto scheme = fibonacci_grid(100000);
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto a = oracle::random_unit(rng), b = oracle::random_unit(rng);
      for (int s : {1, -1}) {
        const Vec3 c = a.vec() + double(s) * b.vec();
        const double q = integrate_sphere([&](const UnitVector3& u) { return std::abs(dot(u, c)); }, scheme);
        worst = std::max(worst, std::abs(q - std::sqrt((1.0 + s * oracle::dot3(oracle::v3(a), oracle::v3(b))) / 2.0)));
      }
    }
    d = fmt("max error %.2e over 100 pairs x 2 signs at n = 1e5 (tol 5e-4)", worst);
    return worst <= 5e-4;
  });

  criterion(3, "Werner reproduction", [&](std::string& d, double& limit) {
    limit = 120.0;
    const auto scheme = fibonacci_grid(100000);
    std::mt19937_64 rng(3);
    double dm = 0.0, dc = 0.0;
    std::size_t violations = 0;
    for (double v : {0.0, 0.3, 0.6, 0.85}) {
      const auto model = build_werner_model(v, scheme);
      for (int k = 0; k < 50; ++k) {
        const auto a = oracle::random_unit(rng), b = oracle::random_unit(rng);
        const Moments m = model.moments(a, b);
        dm = std::max({dm, std::abs(m.ma), std::abs(m.mb)});
        dc = std::max(dc, std::abs(m.c + v * oracle::dot3(oracle::v3(a), oracle::v3(b))));
        violations += model.count_positivity_violations(a, b, 1e-9);
      }
    }
    d = fmt("max marginal %.2e, max correlator deviation %.2e (tol 5e-3), violations %.0f",
            dm, dc, static_cast<double>(violations));
    return dm <= 5e-3 && dc <= 5e-3 && violations == 0;
  });

  criterion(4, "regime sharpness", [&](std::string& d, double&) {
    const auto above = scan_endpoint_weights(v_star + 1e-3, 1000000);
    const auto below = scan_endpoint_weights(v_star - 1e-6, 1000000);
    d = fmt("min p_minus at V*+1e-3: %.3e (t = %.4f); min weight at V*-1e-6: %.3e", above.min_p_minus,
            above.argmin_p_minus, std::min(below.min_p_plus, below.min_p_minus));
    return above.min_p_minus < 0.0 && !below.negative();
  });

  criterion(5, "example classification", [&](std::string& d, double&) {
    cli::RunConfig c;
    c.command = "classify-examples";
    const auto r = cli::run(c);
    // Independent CHSH-gap check on the singlet preset: evaluate the
    // certificate on C = -a.b and enumerate deterministic strategies.
    const auto ex = presets::singlet_equatorial();
    const auto bell = bell_local_membership(ex.target);
    const auto& cert = bell.certificate.value();
    const auto& s = ex.target.grid();
    double value = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        value -= cert.gamma[i * 4 + j] * oracle::dot3(oracle::v3(s.alice()[i]), oracle::v3(s.bob()[j]));
      }
    }
    const double gap = value - oracle::deterministic_max(cert.alpha, cert.beta, cert.gamma);
    const double need = 0.8 * (2.0 * std::numbers::sqrt2 - 2.0);
    d = "table " + r.body.at("status").get<std::string>() +
        fmt(", singlet CHSH gap %.4f (need >= %.4f)", gap, need);
    return r.exit == cli::ExitCode::kOk && gap >= need;
  });

  criterion(6, "LP soundness", [&](std::string& d, double&) {
    double worst = 0.0;
    int checked = 0;
    auto check = [&](const BinaryCorrelation& t, const HiddenVariableGrid& g) {
      const auto v = leggett_feasibility(t, g);
      if (v.status != VerdictStatus::kFeasible) return;
      worst = std::max(worst, witness_error(v, t));
      ++checked;
    };
    for (const auto& ex : presets::classification_examples()) {
      if (!extremal_marginal_shortcut(ex.target)) check(ex.target, ex.grid);
    }
    const SettingsGrid ws(presets::well_spread_settings(10), presets::well_spread_settings(10));
    for (double v : {0.2, 0.5, 0.8, 0.85}) check(werner_correlation(v, ws), HiddenVariableGrid::antipodal(200));
    const auto u = UnitVector3::from_components(1, -2, 0.5), w = UnitVector3::from_components(0.3, 1, -1);
    check(product_state_correlation(u, w, ws), HiddenVariableGrid::product(12, 12).with_pairs({{u, w}}));
    d = fmt("%.0f feasible verdicts, worst reconstruction error %.2e (tol 1e-6)", checked, worst);
    return checked >= 8 && worst <= 1e-6;
  });

  criterion(7, "desk-scale honesty substitute", [&](std::string& d, double&) {
    const auto ex = presets::werner_well_spread();
    const auto v = leggett_feasibility(ex.target, ex.grid);
    const auto& cert = v.certificate.value();
    d = "status " + to_string(v.status) +
        fmt(", margin %.4f on grid, %.4f on %.0f-pair verification grid", cert.margin,
            cert.verification_margin.value_or(NAN), static_cast<double>(cert.verification_pairs));
    return v.status == VerdictStatus::kInfeasibleOnGrid && cert.verification_margin.value_or(-1.0) > 0.0 &&
           cert.verification_pairs >= 10 * ex.grid.size();
  });

  criterion(8, "property suites", [&](std::string& d, double&) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0), f(0.0, 1.0);
    double round_trip = 0.0, interval = 0.0, normalization = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double ma = u(rng), mb = u(rng);
      const auto b = positivity_bounds(ma, mb);
      const double c = b.lower + f(rng) * (b.upper - b.lower);
      const Moments m = extract_moments(reconstruct_distribution(ma, mb, c));
      round_trip = std::max({round_trip, std::abs(m.ma - ma), std::abs(m.mb - mb), std::abs(m.c - c)});
      for (double edge : {b.lower, b.upper}) {
        const auto p = oracle::probabilities(ma, mb, edge);
        interval = std::max(interval, std::abs(std::min({p[0], p[1], p[2], p[3]})));
      }
      const auto w = p_plus_minus(u(rng), f(rng) * v_star);
      normalization = std::max(normalization, std::abs(w.p_plus + w.p_minus - 1.0));
    }
    bool monotone = true;
    const SettingsGrid s(presets::well_spread_settings(4), presets::well_spread_settings(4));
    for (double v : {0.4, 0.7, 0.85}) {
      const auto base = HiddenVariableGrid::antipodal(60);
      std::vector<std::pair<UnitVector3, UnitVector3>> extra;
      for (int k = 0; k < 20; ++k) {
        const auto e = oracle::random_unit(rng);
        extra.push_back({e, -e});
      }
      const auto t = werner_correlation(v, s);
      if (leggett_feasibility(t, base).status == VerdictStatus::kFeasible &&
          leggett_feasibility(t, base.with_pairs(extra)).status != VerdictStatus::kFeasible) {
        monotone = false;
      }
    }
    cli::RunConfig c;
    c.command = "verify-werner";
    c.n = 5000;
    c.trials = 20;
    auto r1 = cli::run(c).body, r2 = cli::run(c).body;
    r1.erase("generated_at");
    r2.erase("generated_at");
    const bool reproducible = r1.dump() == r2.dump();
    d = fmt("round trip %.1e, interval edge %.1e, p+- sum %.1e", round_trip, interval, normalization) +
        ", grid monotone " + (monotone ? "yes" : "no") + ", reproducible " + (reproducible ? "yes" : "no");
    return round_trip <= 1e-12 && interval <= 1e-12 && normalization <= 1e-12 && monotone && reproducible;
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
