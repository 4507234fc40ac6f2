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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leggett/sphere.hpp"

namespace leggett {

/// Default gate for positivity and non-signaling checks.
inline constexpr double kPositivityTolerance = 1e-9;

/// Measurement directions for Alice and Bob. Duplicates are allowed; they
/// are reported by duplicate_warnings().
class SettingsGrid {
 public:
  SettingsGrid(std::vector<UnitVector3> alice, std::vector<UnitVector3> bob);

  const std::vector<UnitVector3>& alice() const { return alice_; }
  const std::vector<UnitVector3>& bob() const { return bob_; }
  std::size_t num_alice() const { return alice_.size(); }
  std::size_t num_bob() const { return bob_.size(); }

  /// One message per pair of settings on the same side closer than 1e-12.
  std::vector<std::string> duplicate_warnings() const;

  friend bool operator==(const SettingsGrid&, const SettingsGrid&) = default;

 private:
  std::vector<UnitVector3> alice_;
  std::vector<UnitVector3> bob_;
};

/// p(alpha, beta) for alpha, beta in {+1, -1}.
struct OutcomeDistribution {
  // Order: (+,+), (+,-), (-,+), (-,-).
  std::array<double, 4> p{};

  static std::size_t index(int alpha, int beta);
  double operator()(int alpha, int beta) const { return p[index(alpha, beta)]; }
};

struct Moments {
  double ma = 0.0;
  double mb = 0.0;
  double c = 0.0;
};

struct PositivityBounds {
  double lower = -1.0;
  double upper = 1.0;
};

/// Admissible correlator interval for marginals (ma, mb):
/// -1 + |ma + mb| <= C <= 1 - |ma - mb|.
PositivityBounds positivity_bounds(double ma, double mb);

/// p(alpha, beta) = (1 + alpha*ma + beta*mb + alpha*beta*c) / 4.
/// Throws PositivityViolation (worst offending outcome) when the bounds are
/// violated beyond `tolerance`.
OutcomeDistribution reconstruct_distribution(double ma, double mb, double c,
                                             double tolerance = kPositivityTolerance);

/// Inverse of reconstruct_distribution.
Moments extract_moments(const OutcomeDistribution& dist);

struct PositivityViolationRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  /// Distance of C_ij outside its admissible interval.
  double slack = 0.0;
};

/// Finite-setting correlation in the (MA, MB, C) parametrization. C is stored
/// row-major with Alice-indexed rows. Entries must be finite; positivity is
/// checked separately by validate() so that invalid tables can be inspected.
class BinaryCorrelation {
 public:
  BinaryCorrelation(SettingsGrid grid, std::vector<double> ma, std::vector<double> mb,
                    std::vector<double> c);

  const SettingsGrid& grid() const { return grid_; }
  std::size_t num_alice() const { return grid_.num_alice(); }
  std::size_t num_bob() const { return grid_.num_bob(); }

  double ma(std::size_t i) const { return ma_[i]; }
  double mb(std::size_t j) const { return mb_[j]; }
  double c(std::size_t i, std::size_t j) const { return c_[i * num_bob() + j]; }

  const std::vector<double>& ma_values() const { return ma_; }
  const std::vector<double>& mb_values() const { return mb_; }
  const std::vector<double>& c_values() const { return c_; }

  OutcomeDistribution distribution(std::size_t i, std::size_t j) const {
    return reconstruct_distribution(ma(i), mb(j), c(i, j));
  }

 private:
  SettingsGrid grid_;
  std::vector<double> ma_;
  std::vector<double> mb_;
  std::vector<double> c_;
};

/// Empty iff every (i, j) satisfies the positivity bounds within tolerance.
std::vector<PositivityViolationRecord> validate(const BinaryCorrelation& corr,
                                                double tolerance = kPositivityTolerance);

/// Raw probability table P[i][j] -> (MA, MB, C). Throws SignalingError if a
/// marginal varies with the remote setting by more than `tolerance`, and
/// InvalidArgument for negative or unnormalized entries.
BinaryCorrelation from_probability_table(SettingsGrid grid,
                                         const std::vector<std::vector<OutcomeDistribution>>& table,
                                         double tolerance = kPositivityTolerance);

/// Convex combination sum_k w_k * corr_k; all inputs must share one grid.
BinaryCorrelation mix(std::span<const double> weights, std::span<const BinaryCorrelation> parts);

/// Two-qubit Werner state: zero marginals, C_ij = -V a_i.b_j.
BinaryCorrelation werner_correlation(double visibility, const SettingsGrid& grid);

/// Fully random correlation P = 1/4 (Werner with V = 0).
BinaryCorrelation fully_random_correlation(const SettingsGrid& grid);

/// PR box on two settings per side: zero marginals, C(i, j) = (-1)^(ij).
BinaryCorrelation pr_box_correlation(const UnitVector3& a0, const UnitVector3& a1,
                                     const UnitVector3& b0, const UnitVector3& b1);

/// Both parties always output +1.
BinaryCorrelation deterministic_correlation(const SettingsGrid& grid);

/// Product of pure-state statistics: MA_i = u.a_i, MB_j = v.b_j, C_ij = MA_i MB_j.
BinaryCorrelation product_state_correlation(const UnitVector3& u, const UnitVector3& v,
                                            const SettingsGrid& grid);

}  // namespace leggett
