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
#include <string>
#include <vector>

namespace leggett::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

enum class PivotRule {
  /// Smallest-index entering and leaving variables; never cycles.
  kBland,
  /// Most negative reduced cost; switches to Bland after a run of degenerate
  /// pivots so it still terminates.
  kDantzigWithBlandFallback,
};

struct Constraint {
  std::vector<double> coefficients;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// minimize c.x subject to the constraints and x >= 0.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_variables);

  std::size_t num_variables() const { return num_variables_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void set_objective(std::vector<double> c);
  void add_constraint(std::vector<double> coefficients, Sense sense, double rhs);

 private:
  std::size_t num_variables_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(Status s);

struct Options {
  /// Smallest pivot element magnitude accepted in the ratio test.
  double pivot_tolerance = 1e-10;
  /// Phase-one objective above this declares infeasibility.
  double feasibility_tolerance = 1e-9;
  /// Reduced costs above -tolerance count as non-improving.
  double optimality_tolerance = 1e-10;
  /// Scale of the deterministic right-hand-side shifts applied against
  /// degeneracy; removed again before the solution is reported. 0 disables.
  double perturbation = 1e-11;
  std::size_t max_iterations = 1000000;
  PivotRule rule = PivotRule::kDantzigWithBlandFallback;
};

struct Solution {
  Status status = Status::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  /// Optimal phase-one objective (sum of artificial values).
  double infeasibility = 0.0;
  std::size_t iterations = 0;
};

/// Two-phase dense tableau simplex.
Solution solve(const LinearProgram& lp, const Options& options = {});

}  // namespace leggett::lp
