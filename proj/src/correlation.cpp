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

#include "leggett/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leggett/errors.hpp"

namespace leggett {

SettingsGrid::SettingsGrid(std::vector<UnitVector3> alice, std::vector<UnitVector3> bob)
    : alice_(std::move(alice)), bob_(std::move(bob)) {
  if (alice_.empty() || bob_.empty()) {
    throw InvalidArgument("each party needs at least one setting");
  }
}

namespace {

void collect_duplicates(const std::vector<UnitVector3>& settings, const char* party,
                        std::vector<std::string>& out) {
  for (std::size_t i = 0; i < settings.size(); ++i) {
    for (std::size_t k = i + 1; k < settings.size(); ++k) {
      if ((settings[i].vec() - settings[k].vec()).norm() <= 1e-12) {
        out.push_back(std::string(party) + " settings " + std::to_string(i) + " and " +
                      std::to_string(k) + " coincide");
      }
    }
  }
}

}  // namespace

std::vector<std::string> SettingsGrid::duplicate_warnings() const {
  std::vector<std::string> out;
  collect_duplicates(alice_, "alice", out);
  collect_duplicates(bob_, "bob", out);
  return out;
}

std::size_t OutcomeDistribution::index(int alpha, int beta) {
  if ((alpha != 1 && alpha != -1) || (beta != 1 && beta != -1)) {
    throw InvalidArgument("outcomes must be +1 or -1");
  }
  return (alpha == 1 ? 0 : 2) + (beta == 1 ? 0 : 1);
}

PositivityBounds positivity_bounds(double ma, double mb) {
  return {-1.0 + std::abs(ma + mb), 1.0 - std::abs(ma - mb)};
}

OutcomeDistribution reconstruct_distribution(double ma, double mb, double c, double tolerance) {
  OutcomeDistribution out;
  int worst_alpha = 1, worst_beta = 1;
  double worst = 0.0;
  for (int alpha : {1, -1}) {
    for (int beta : {1, -1}) {
      const double p = 0.25 * (1.0 + alpha * ma + beta * mb + alpha * beta * c);
      out.p[OutcomeDistribution::index(alpha, beta)] = p;
      if (p < worst) {
        worst = p;
        worst_alpha = alpha;
        worst_beta = beta;
      }
    }
  }
  // Each probability is a quarter of a bound slack, so compare 4p to the tolerance.
  if (4.0 * worst < -tolerance) throw PositivityViolation(worst_alpha, worst_beta, worst);
  return out;
}

Moments extract_moments(const OutcomeDistribution& d) {
  const double pp = d(1, 1), pm = d(1, -1), mp = d(-1, 1), mm = d(-1, -1);
  return {pp + pm - mp - mm, pp - pm + mp - mm, pp - pm - mp + mm};
}

BinaryCorrelation::BinaryCorrelation(SettingsGrid grid, std::vector<double> ma,
                                     std::vector<double> mb, std::vector<double> c)
    : grid_(std::move(grid)), ma_(std::move(ma)), mb_(std::move(mb)), c_(std::move(c)) {
  if (ma_.size() != grid_.num_alice() || mb_.size() != grid_.num_bob() ||
      c_.size() != grid_.num_alice() * grid_.num_bob()) {
    throw InvalidArgument("correlation table shape does not match settings grid");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(ma_.begin(), ma_.end(), finite) || !std::all_of(mb_.begin(), mb_.end(), finite) ||
      !std::all_of(c_.begin(), c_.end(), finite)) {
    throw InvalidArgument("correlation entries must be finite");
  }
}

std::vector<PositivityViolationRecord> validate(const BinaryCorrelation& corr, double tolerance) {
  std::vector<PositivityViolationRecord> out;
  for (std::size_t i = 0; i < corr.num_alice(); ++i) {
    for (std::size_t j = 0; j < corr.num_bob(); ++j) {
      const auto [lo, hi] = positivity_bounds(corr.ma(i), corr.mb(j));
      const double slack = std::max(lo - corr.c(i, j), corr.c(i, j) - hi);
      if (slack > tolerance) out.push_back({i, j, slack});
    }
  }
  return out;
}

BinaryCorrelation from_probability_table(SettingsGrid grid,
                                         const std::vector<std::vector<OutcomeDistribution>>& table,
                                         double tolerance) {
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();
  if (table.size() != na) throw InvalidArgument("probability table row count mismatch");
  std::vector<double> ma(na), mb(nb), c(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    if (table[i].size() != nb) throw InvalidArgument("probability table column count mismatch");
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& d = table[i][j];
      double total = 0.0;
      for (double p : d.p) {
        if (!std::isfinite(p) || p < -tolerance) {
          throw InvalidArgument("negative or non-finite probability at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > tolerance) {
        throw InvalidArgument("probabilities at (" + std::to_string(i) + "," + std::to_string(j) +
                              ") do not sum to 1");
      }
      const Moments m = extract_moments(d);
      c[i * nb + j] = m.c;
      if (j == 0) {
        ma[i] = m.ma;
      } else if (std::abs(m.ma - ma[i]) > tolerance) {
        throw SignalingError("alice marginal at setting " + std::to_string(i) +
                             " depends on bob's setting");
      }
      if (i == 0) {
        mb[j] = m.mb;
      } else if (std::abs(m.mb - mb[j]) > tolerance) {
        throw SignalingError("bob marginal at setting " + std::to_string(j) +
                             " depends on alice's setting");
      }
    }
  }
  return BinaryCorrelation(std::move(grid), std::move(ma), std::move(mb), std::move(c));
}

BinaryCorrelation mix(std::span<const double> weights, std::span<const BinaryCorrelation> parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw InvalidArgument("mix needs one weight per part and at least one part");
  }
  const SettingsGrid& grid = parts.front().grid();
  std::vector<double> ma(grid.num_alice(), 0.0), mb(grid.num_bob(), 0.0),
      c(grid.num_alice() * grid.num_bob(), 0.0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!(parts[k].grid() == grid)) throw InvalidArgument("mix parts use different settings");
    const double w = weights[k];
    for (std::size_t i = 0; i < ma.size(); ++i) ma[i] += w * parts[k].ma(i);
    for (std::size_t j = 0; j < mb.size(); ++j) mb[j] += w * parts[k].mb(j);
    for (std::size_t ij = 0; ij < c.size(); ++ij) c[ij] += w * parts[k].c_values()[ij];
  }
  return BinaryCorrelation(grid, std::move(ma), std::move(mb), std::move(c));
}

BinaryCorrelation werner_correlation(double visibility, const SettingsGrid& grid) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw InvalidArgument("visibility must lie in [0, 1]");
  }
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();
  std::vector<double> c(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      c[i * nb + j] = -visibility * dot(grid.alice()[i], grid.bob()[j]);
    }
  }
  return BinaryCorrelation(grid, std::vector<double>(na, 0.0), std::vector<double>(nb, 0.0),
                           std::move(c));
}

BinaryCorrelation fully_random_correlation(const SettingsGrid& grid) {
  return werner_correlation(0.0, grid);
}

BinaryCorrelation pr_box_correlation(const UnitVector3& a0, const UnitVector3& a1,
                                     const UnitVector3& b0, const UnitVector3& b1) {
  return BinaryCorrelation(SettingsGrid({a0, a1}, {b0, b1}), {0.0, 0.0}, {0.0, 0.0},
                           {1.0, 1.0, 1.0, -1.0});
}

BinaryCorrelation deterministic_correlation(const SettingsGrid& grid) {
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();
  return BinaryCorrelation(grid, std::vector<double>(na, 1.0), std::vector<double>(nb, 1.0),
                           std::vector<double>(na * nb, 1.0));
}

BinaryCorrelation product_state_correlation(const UnitVector3& u, const UnitVector3& v,
                                            const SettingsGrid& grid) {
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();
  std::vector<double> ma(na), mb(nb), c(na * nb);
  for (std::size_t i = 0; i < na; ++i) ma[i] = dot(u, grid.alice()[i]);
  for (std::size_t j = 0; j < nb; ++j) mb[j] = dot(v, grid.bob()[j]);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) c[i * nb + j] = ma[i] * mb[j];
  }
  return BinaryCorrelation(grid, std::move(ma), std::move(mb), std::move(c));
}

}  // namespace leggett
