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

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>

#include <gtest/gtest.h>

#include "leggett/errors.hpp"
#include "leggett/simplex.hpp"

using namespace leggett::lp;

namespace {

// Minimum of c.x over {A x (sense) b, x >= 0} by enumerating every basic
// point of the n-dimensional arrangement. Empty when infeasible. Only for
// tiny bounded problems.
std::optional<double> vertex_enumeration(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& c : lp.constraints()) {
    rows.push_back(c.coefficients);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const std::size_t m = rows.size();
  auto feasible = [&](const std::vector<double>& x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < -1e-9) return false;
    }
    for (std::size_t i = 0; i < lp.constraints().size(); ++i) {
      const auto& c = lp.constraints()[i];
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += c.coefficients[j] * x[j];
      if (c.sense == Sense::kLessEqual && v > c.rhs + 1e-9) return false;
      if (c.sense == Sense::kGreaterEqual && v < c.rhs - 1e-9) return false;
      if (c.sense == Sense::kEqual && std::abs(v - c.rhs) > 1e-9) return false;
    }
    return true;
  };
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  // Iterate over n-subsets of the m hyperplanes.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) a[r][j] = rows[pick[r]][j];
        a[r][n] = rhs[pick[r]];
      }
      for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
          if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < 1e-12) return;
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == col) continue;
          const double f = a[r][col] / a[col][col];
          for (std::size_t j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
        }
      }
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = a[j][n] / a[j][j];
      if (!feasible(x)) return;
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.objective()[j] * x[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t k = start; k < m; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

void expect_feasible(const LinearProgram& lp, const Solution& s, double tol = 1e-8) {
  for (double x : s.x) EXPECT_GE(x, -tol);
  for (const auto& c : lp.constraints()) {
    double v = 0.0;
    for (std::size_t j = 0; j < lp.num_variables(); ++j) v += c.coefficients[j] * s.x[j];
    switch (c.sense) {
      case Sense::kLessEqual: EXPECT_LE(v, c.rhs + tol); break;
      case Sense::kGreaterEqual: EXPECT_GE(v, c.rhs - tol); break;
      case Sense::kEqual: EXPECT_NEAR(v, c.rhs, tol); break;
    }
  }
}

}  // namespace

TEST(Simplex, TextbookMaximization) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
  LinearProgram lp(2);
  lp.set_objective({-3, -5});
  lp.add_constraint({1, 0}, Sense::kLessEqual, 4);
  lp.add_constraint({0, 2}, Sense::kLessEqual, 12);
  lp.add_constraint({3, 2}, Sense::kLessEqual, 18);
  const auto s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, -36, 1e-9);
  EXPECT_NEAR(s.x[0], 2, 1e-9);
  EXPECT_NEAR(s.x[1], 6, 1e-9);
}

TEST(Simplex, EqualityAndGreaterEqualRows) {
  // min x + y s.t. x + 2y = 4, x >= 1 -> (1, 1.5), value 2.5.
  LinearProgram lp(2);
  lp.set_objective({1, 1});
  lp.add_constraint({1, 2}, Sense::kEqual, 4);
  lp.add_constraint({1, 0}, Sense::kGreaterEqual, 1);
  const auto s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, 2.5, 1e-9);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  LinearProgram inf(1);
  inf.set_objective({1});
  inf.add_constraint({1}, Sense::kLessEqual, 1);
  inf.add_constraint({1}, Sense::kGreaterEqual, 2);
  EXPECT_EQ(solve(inf).status, Status::kInfeasible);

  LinearProgram unb(2);
  unb.set_objective({-1, 0});
  unb.add_constraint({1, -1}, Sense::kLessEqual, 1);
  EXPECT_EQ(solve(unb).status, Status::kUnbounded);
}

TEST(Simplex, NegativeRightHandSide) {
  // -x <= -3 is x >= 3.
  LinearProgram lp(1);
  lp.set_objective({1});
  lp.add_constraint({-1}, Sense::kLessEqual, -3);
  const auto s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.x[0], 3, 1e-9);
}

// Beale's example cycles under the textbook most-negative rule without
// anti-cycling safeguards.
TEST(Simplex, TerminatesOnCyclingExample) {
  LinearProgram lp(4);
  lp.set_objective({-0.75, 20, -0.5, 6});
  lp.add_constraint({0.25, -8, -1, 9}, Sense::kLessEqual, 0);
  lp.add_constraint({0.5, -12, -0.5, 3}, Sense::kLessEqual, 0);
  lp.add_constraint({0, 0, 1, 0}, Sense::kLessEqual, 1);
  for (auto rule : {PivotRule::kBland, PivotRule::kDantzigWithBlandFallback}) {
    for (double perturbation : {0.0, 1e-11}) {
      Options o;
      o.rule = rule;
      o.perturbation = perturbation;
      const auto s = solve(lp, o);
      ASSERT_EQ(s.status, Status::kOptimal);
      EXPECT_NEAR(s.objective, -1.25, 1e-9);
    }
  }
}

TEST(Simplex, PerturbationIsRemovedFromReportedSolution) {
  // Degenerate vertex at the origin; the reported point must satisfy the
  // unperturbed rows exactly.
  LinearProgram lp(3);
  lp.set_objective({-1, -1, -1});
  lp.add_constraint({1, -1, 0}, Sense::kLessEqual, 0);
  lp.add_constraint({0, 1, -1}, Sense::kLessEqual, 0);
  lp.add_constraint({1, 1, 1}, Sense::kLessEqual, 3);
  Options o;
  o.perturbation = 1e-6;
  const auto s = solve(lp, o);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, -3, 1e-12);
  expect_feasible(lp, s, 1e-12);
}

TEST(Simplex, AgreesWithVertexEnumerationOnRandomProblems) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-4, 4), nvars(2, 4), nrows(1, 5), sense(0, 2);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = nvars(rng);
    LinearProgram lp(n);
    std::vector<double> c(n);
    for (auto& x : c) x = coef(rng);
    lp.set_objective(c);
    const int m = nrows(rng);
    for (int r = 0; r < m; ++r) {
      std::vector<double> a(n);
      for (auto& x : a) x = coef(rng);
      const Sense s = sense(rng) == 0 ? Sense::kGreaterEqual
                                       : (sense(rng) == 0 ? Sense::kEqual : Sense::kLessEqual);
      lp.add_constraint(a, s, coef(rng));
    }
    for (std::size_t j = 0; j < n; ++j) {  // keep it bounded
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      lp.add_constraint(e, Sense::kLessEqual, 10);
    }
    const auto ref = vertex_enumeration(lp);
    for (auto rule : {PivotRule::kBland, PivotRule::kDantzigWithBlandFallback}) {
      Options o;
      o.rule = rule;
      const auto s = solve(lp, o);
      if (!ref) {
        EXPECT_EQ(s.status, Status::kInfeasible) << "trial " << trial;
        continue;
      }
      ASSERT_EQ(s.status, Status::kOptimal) << "trial " << trial;
      EXPECT_NEAR(s.objective, *ref, 1e-7) << "trial " << trial;
      expect_feasible(lp, s);
    }
    ref ? ++optimal : ++infeasible;
  }
  EXPECT_GT(optimal, 50);
  EXPECT_GT(infeasible, 10);
}

TEST(Simplex, RejectsShapeMismatch) {
  LinearProgram lp(2);
  EXPECT_THROW(lp.set_objective({1}), leggett::InvalidArgument);
  EXPECT_THROW(lp.add_constraint({1, 2, 3}, Sense::kEqual, 0), leggett::InvalidArgument);
}
