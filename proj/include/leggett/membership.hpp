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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leggett/correlation.hpp"
#include "leggett/separation.hpp"
#include "leggett/simplex.hpp"
#include "leggett/sphere.hpp"

namespace leggett {

enum class GridMode { kIndependentProduct, kAntipodal };

std::string to_string(GridMode mode);

/// Finite set of hidden-variable pairs (u, v) over which a Leggett mixture is
/// sought. Pairs come from Fibonacci lattices plus optional extra pairs.
class HiddenVariableGrid {
 public:
  /// (u_k, -u_k) for the n-node Fibonacci lattice.
  static HiddenVariableGrid antipodal(std::size_t n);
  /// All (u_k, v_l) for Fibonacci lattices of n_u and n_v nodes.
  static HiddenVariableGrid product(std::size_t n_u, std::size_t n_v);
  /// Only the given pairs; antipodal mode requires v = -u for each.
  static HiddenVariableGrid from_pairs(GridMode mode,
                                       std::vector<std::pair<UnitVector3, UnitVector3>> pairs);

  /// Copy with extra pairs appended (checked against the mode).
  HiddenVariableGrid with_pairs(const std::vector<std::pair<UnitVector3, UnitVector3>>& extra) const;

  /// Grid with at least `factor` times as many lattice pairs, built from
  /// the same recipe; extra pairs are kept.
  HiddenVariableGrid refined(std::size_t factor) const;

  GridMode mode() const { return mode_; }
  const std::vector<std::pair<UnitVector3, UnitVector3>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  std::size_t lattice_u() const { return n_u_; }
  std::size_t lattice_v() const { return n_v_; }

 private:
  HiddenVariableGrid(GridMode mode, std::size_t n_u, std::size_t n_v);
  void append(const UnitVector3& u, const UnitVector3& v, bool from_lattice);

  GridMode mode_;
  std::size_t n_u_ = 0;
  std::size_t n_v_ = 0;
  std::vector<std::pair<UnitVector3, UnitVector3>> pairs_;
  std::vector<std::pair<UnitVector3, UnitVector3>> extra_;
};

enum class VerdictStatus { kFeasible, kInfeasibleOnGrid, kInfeasibleExact, kUndetermined };

std::string to_string(VerdictStatus status);

inline bool is_infeasible(VerdictStatus s) {
  return s == VerdictStatus::kInfeasibleOnGrid || s == VerdictStatus::kInfeasibleExact;
}

/// Witness component: hidden pair with its correlator on every setting pair.
struct LeggettWitnessComponent {
  UnitVector3 u;
  UnitVector3 v;
  double weight = 0.0;
  std::vector<double> correlators;  // row-major, Alice-indexed rows
};

/// Deterministic local strategy with its mixture weight.
struct LocalStrategy {
  std::vector<int> alice;
  std::vector<int> bob;
  double weight = 0.0;
};

/// Linear functional F = sum alpha_i MA_i + sum beta_j MB_j + sum gamma_ij C_ij
/// separating the target from a model set.
struct Certificate {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;  // row-major
  double value = 0.0;         ///< F on the target
  double bound = 0.0;         ///< max of F over the model set
  double margin = 0.0;        ///< value - bound
  /// Re-evaluation on a finer hidden-variable grid (Leggett only).
  std::optional<double> verification_bound;
  std::optional<double> verification_margin;
  std::size_t verification_pairs = 0;
};

struct Diagnostics {
  std::size_t iterations = 0;  ///< simplex pivots across all LP solves
  std::size_t rounds = 0;      ///< cutting-plane rounds
  double max_residual = 0.0;   ///< witness reconstruction error
  std::string grid_mode;
  std::size_t grid_pairs = 0;
  std::string note;
};

struct FeasibilityVerdict {
  VerdictStatus status = VerdictStatus::kUndetermined;
  std::optional<std::vector<LeggettWitnessComponent>> leggett_witness;
  std::optional<std::vector<LocalStrategy>> local_witness;
  std::optional<Certificate> certificate;
  Diagnostics diagnostics;
};

struct SolverOptions {
  /// Half-width of the band that replaces each equality constraint.
  double equality_slack = 1e-9;
  /// Separation margin below which no infeasibility is claimed.
  double margin_tolerance = 1e-7;
  /// Witness components at or below this weight are dropped.
  double weight_floor = 1e-12;
  /// Feasible witnesses must reproduce the target to this accuracy.
  double witness_tolerance = 1e-8;
  std::size_t verification_factor = 10;
  std::size_t max_bell_settings = 20;
  SeparationOptions separation{};
};

/// Leggett compatibility of a finite-setting correlation on a hidden-variable
/// grid. Throws InvalidArgument if the correlation fails validate().
FeasibilityVerdict leggett_feasibility(const BinaryCorrelation& corr,
                                       const HiddenVariableGrid& grid,
                                       const SolverOptions& options = {});

/// InfeasibleExact when one party has two extremal marginals |M| = 1 that no
/// single unit vector can produce (settings s_i a_i differ by more than 1e-9
/// rad, with s_i the sign of the marginal).
std::optional<FeasibilityVerdict> extremal_marginal_shortcut(const BinaryCorrelation& corr,
                                                             double tolerance = 1e-12);

/// Membership in the local polytope of deterministic strategies. Throws
/// CapExceeded when |A| + |B| exceeds options.max_bell_settings.
FeasibilityVerdict bell_local_membership(const BinaryCorrelation& corr,
                                         const SolverOptions& options = {});

struct Classification {
  FeasibilityVerdict leggett;
  FeasibilityVerdict bell;
};

/// Shortcut, then Leggett LP, then Bell LP.
Classification classify(const BinaryCorrelation& corr, const HiddenVariableGrid& grid,
                        const SolverOptions& options = {});

/// Max of the certificate functional over the Leggett model set of `grid`.
double leggett_bound(const Certificate& cert, const SettingsGrid& settings,
                     const HiddenVariableGrid& grid);

/// Value of the certificate functional on a correlation.
double functional_value(const Certificate& cert, const BinaryCorrelation& corr);

}  // namespace leggett
