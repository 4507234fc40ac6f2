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

#include "leggett/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>

#include "leggett/errors.hpp"

namespace leggett::lp {

LinearProgram::LinearProgram(std::size_t num_variables)
    : num_variables_(num_variables), objective_(num_variables, 0.0) {
  if (num_variables == 0) throw InvalidArgument("a linear program needs at least one variable");
}

void LinearProgram::set_objective(std::vector<double> c) {
  if (c.size() != num_variables_) throw InvalidArgument("objective length mismatch");
  objective_ = std::move(c);
}

void LinearProgram::add_constraint(std::vector<double> coefficients, Sense sense, double rhs) {
  if (coefficients.size() != num_variables_) throw InvalidArgument("constraint length mismatch");
  if (!std::isfinite(rhs)) throw InvalidArgument("constraint rhs must be finite");
  constraints_.push_back({std::move(coefficients), sense, rhs});
}

std::string to_string(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kDegenerateRunBeforeBland = 50;

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Options& options) : options_(options) {
    const auto& rows = lp.constraints();
    m_ = rows.size();
    n_struct_ = lp.num_variables();

    // Column layout: structural | slack/surplus | artificial.
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
      const Sense s = effective_sense(r);
      if (s != Sense::kEqual) ++n_slack;
      if (s != Sense::kLessEqual) ++n_art;
    }
    art_begin_ = n_struct_ + n_slack;
    n_ = art_begin_ + n_art;
    width_ = n_ + 1;
    cells_.assign(m_ * width_, 0.0);
    basis_.assign(m_, 0);

    std::size_t next_slack = n_struct_, next_art = art_begin_;
    original_rhs_.resize(m_);
    // Deterministic pseudo-random shifts break ties between degenerate rows.
    std::uint64_t lcg = 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& r = rows[i];
      const double flip = r.rhs < 0.0 ? -1.0 : 1.0;
      double* row = &cells_[i * width_];
      for (std::size_t j = 0; j < n_struct_; ++j) row[j] = flip * r.coefficients[j];
      original_rhs_[i] = flip * r.rhs;
      lcg = lcg * 6364136223846793005ULL + 1442695040888963407ULL;
      const double unit = static_cast<double>(lcg >> 11) * 0x1.0p-53;
      row[n_] = original_rhs_[i] + options_.perturbation * (1.0 + unit);
      switch (effective_sense(r)) {
        case Sense::kLessEqual:
          row[next_slack] = 1.0;
          basis_[i] = next_slack++;
          break;
        case Sense::kGreaterEqual:
          row[next_slack++] = -1.0;
          row[next_art] = 1.0;
          basis_[i] = next_art++;
          break;
        case Sense::kEqual:
          row[next_art] = 1.0;
          basis_[i] = next_art++;
          break;
      }
      unit_column_.push_back(basis_[i]);
    }
    reduced_.assign(n_, 0.0);
  }

  Solution run(const LinearProgram& lp) {
    Solution out;
    // Phase one: minimize the sum of artificials.
    std::vector<double> phase_one(n_, 0.0);
    for (std::size_t j = art_begin_; j < n_; ++j) phase_one[j] = 1.0;
    price(phase_one);
    Status st = iterate(/*allow_artificial=*/true, out.iterations);
    if (st == Status::kIterationLimit) {
      out.status = st;
      return out;
    }
    out.infeasibility = std::max(0.0, value_);
    if (value_ > options_.feasibility_tolerance) {
      out.status = Status::kInfeasible;
      out.x = primal();
      return out;
    }
    drive_out_artificials(out.iterations);

    // Phase two on the original objective.
    std::vector<double> cost(n_, 0.0);
    std::copy(lp.objective().begin(), lp.objective().end(), cost.begin());
    price(cost);
    st = iterate(/*allow_artificial=*/false, out.iterations);
    out.status = st;
    if (options_.perturbation > 0.0) remove_perturbation();
    out.x = primal();
    out.objective = 0.0;
    for (std::size_t j = 0; j < n_struct_; ++j) out.objective += lp.objective()[j] * out.x[j];
    return out;
  }

 private:
  static Sense effective_sense(const Constraint& r) {
    if (r.rhs >= 0.0 || r.sense == Sense::kEqual) return r.sense;
    return r.sense == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
  }

  double at(std::size_t i, std::size_t j) const { return cells_[i * width_ + j]; }
  double rhs(std::size_t i) const { return cells_[i * width_ + n_]; }

  // Recomputes reduced costs and objective value for the current basis.
  void price(const std::vector<double>& cost) {
    for (std::size_t j = 0; j < n_; ++j) reduced_[j] = cost[j];
    value_ = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &cells_[i * width_];
      for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= cb * row[j];
      value_ += cb * row[n_];
    }
  }

  std::size_t choose_entering(bool allow_artificial, bool bland) const {
    const std::size_t limit = allow_artificial ? n_ : art_begin_;
    const double tol = options_.optimality_tolerance;
    std::size_t best = n_;
    double best_value = -tol;
    for (std::size_t j = 0; j < limit; ++j) {
      if (reduced_[j] < best_value) {
        if (bland) return j;
        best_value = reduced_[j];
        best = j;
      }
    }
    return best;
  }

  std::size_t choose_leaving(std::size_t s) const {
    std::size_t best = m_;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = at(i, s);
      if (a <= options_.pivot_tolerance) continue;
      const double ratio = std::max(0.0, rhs(i)) / a;
      if (ratio < best_ratio - 1e-14) {
        best_ratio = ratio;
        best = i;
      } else if (ratio <= best_ratio + 1e-14 && basis_[i] < basis_[best]) {
        best_ratio = std::min(best_ratio, ratio);
        best = i;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t s) {
    double* prow = &cells_[r * width_];
    const double inv = 1.0 / prow[s];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[s] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &cells_[i * width_];
      const double f = row[s];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[s] = 0.0;
    }
    const double d = reduced_[s];
    if (d != 0.0) {
      for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= d * prow[j];
      value_ += d * prow[n_];
      reduced_[s] = 0.0;
    }
    basis_[r] = s;
  }

  Status iterate(bool allow_artificial, std::size_t& iterations) {
    std::size_t degenerate_run = 0;
    while (true) {
      if (iterations >= options_.max_iterations) return Status::kIterationLimit;
      const bool bland = options_.rule == PivotRule::kBland ||
                         degenerate_run >= kDegenerateRunBeforeBland;
      const std::size_t s = choose_entering(allow_artificial, bland);
      if (s == n_) return Status::kOptimal;
      const std::size_t r = choose_leaving(s);
      if (r == m_) return Status::kUnbounded;
      degenerate_run = rhs(r) <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(r, s);
      ++iterations;
    }
  }

  void drive_out_artificials(std::size_t& iterations) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      std::size_t best = n_;
      double best_abs = options_.pivot_tolerance;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::abs(at(i, j)) > best_abs) {
          best_abs = std::abs(at(i, j));
          best = j;
        }
      }
      // A row with no structural entry is redundant; its artificial stays at zero.
      if (best == n_) continue;
      pivot(i, best);
      ++iterations;
    }
  }

  // Reduced costs do not depend on the right-hand side, so the final basis
  // stays optimal once x_B = B^-1 b is recomputed from the unshifted rows.
  // The unit columns of the initial basis hold B^-1.
  void remove_perturbation() {
    for (std::size_t r = 0; r < m_; ++r) {
      const double* row = &cells_[r * width_];
      double v = 0.0;
      for (std::size_t i = 0; i < m_; ++i) v += row[unit_column_[i]] * original_rhs_[i];
      cells_[r * width_ + n_] = v;
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_struct_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) x[basis_[i]] = std::max(0.0, rhs(i));
    }
    return x;
  }

  Options options_;
  std::size_t m_ = 0;
  std::size_t n_struct_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t n_ = 0;
  std::size_t width_ = 0;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_column_;
  std::vector<double> original_rhs_;
  std::vector<double> reduced_;
  double value_ = 0.0;
};

}  // namespace

Solution solve(const LinearProgram& lp, const Options& options) {
  if (lp.constraints().empty()) {
    // Only x >= 0: optimal at the origin unless some cost is negative.
    Solution out;
    out.x.assign(lp.num_variables(), 0.0);
    const bool bounded = std::all_of(lp.objective().begin(), lp.objective().end(),
                                     [](double c) { return c >= 0.0; });
    out.status = bounded ? Status::kOptimal : Status::kUnbounded;
    return out;
  }
  Tableau tableau(lp, options);
  return tableau.run(lp);
}

}  // namespace leggett::lp
