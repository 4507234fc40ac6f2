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

#include "leggett/separation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "leggett/errors.hpp"

namespace leggett {

double support_value(const std::vector<double>& theta, const Generator& g) {
  double total = 0.0;
  for (std::size_t d = 0; d < theta.size(); ++d) {
    total += std::max(theta[d] * g.lo[d], theta[d] * g.hi[d]);
  }
  return total;
}

namespace {

// Master LP over x = (theta_plus[D], theta_minus[D], s_plus, s_minus):
//   minimize -(theta_plus - theta_minus).target + s_plus - s_minus
//   s.t. theta_plus.hi - theta_minus.lo - s <= 0 for every active generator,
//        theta_plus, theta_minus <= 1.
lp::LinearProgram master_program(const std::vector<Generator>& active,
                                 const std::vector<double>& target) {
  const std::size_t dim = target.size();
  const std::size_t nvars = 2 * dim + 2;
  lp::LinearProgram program(nvars);
  std::vector<double> c(nvars, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    c[d] = -target[d];
    c[dim + d] = target[d];
  }
  c[2 * dim] = 1.0;
  c[2 * dim + 1] = -1.0;
  program.set_objective(std::move(c));

  for (const auto& g : active) {
    std::vector<double> row(nvars, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
      row[d] = g.hi[d];
      row[dim + d] = -g.lo[d];
    }
    row[2 * dim] = -1.0;
    row[2 * dim + 1] = 1.0;
    program.add_constraint(std::move(row), lp::Sense::kLessEqual, 0.0);
  }
  for (std::size_t k = 0; k < 2 * dim; ++k) {
    std::vector<double> row(nvars, 0.0);
    row[k] = 1.0;
    program.add_constraint(std::move(row), lp::Sense::kLessEqual, 1.0);
  }
  return program;
}

}  // namespace

SeparationResult max_margin_separation(const GeneratorFamily& family,
                                       const std::vector<double>& target,
                                       const SeparationOptions& options) {
  const std::size_t dim = family.dimension;
  if (target.size() != dim) throw InvalidArgument("target dimension mismatch");
  if (family.seeds.empty()) throw InvalidArgument("separation needs at least one seed generator");

  SeparationResult out;
  std::set<std::uint64_t> in_master;
  std::vector<Generator> active;
  for (std::uint64_t id : family.seeds) {
    if (in_master.insert(id).second) {
      out.active.push_back(id);
      active.push_back(family.generator(id));
    }
  }

  for (out.rounds = 1; out.rounds <= options.max_rounds; ++out.rounds) {
    const lp::Solution sol = lp::solve(master_program(active, target), options.lp);
    out.lp_iterations += sol.iterations;
    if (sol.status != lp::Status::kOptimal) break;

    std::vector<double> theta(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      theta[d] = std::clamp(sol.x[d] - sol.x[dim + d], -1.0, 1.0);
    }
    const double master_bound = sol.x[2 * dim] - sol.x[2 * dim + 1];

    const auto best = family.best(theta, options.cuts_per_round);
    out.theta = theta;
    out.value = 0.0;
    for (std::size_t d = 0; d < dim; ++d) out.value += theta[d] * target[d];
    out.bound = best.front().first;
    out.margin = out.value - out.bound;

    std::size_t added = 0;
    for (const auto& [support, id] : best) {
      if (support <= master_bound + options.cut_tolerance) break;
      if (in_master.insert(id).second) {
        out.active.push_back(id);
        active.push_back(family.generator(id));
        ++added;
      }
    }
    if (added == 0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

HullWitness hull_witness(const GeneratorFamily& family, const std::vector<std::uint64_t>& ids,
                         const std::vector<double>& target, double slack, double weight_floor,
                         const lp::Options& lp_options) {
  const std::size_t dim = family.dimension;
  const std::size_t n = ids.size();
  HullWitness out;
  if (n == 0) return out;

  std::vector<Generator> gens;
  gens.reserve(n);
  for (std::uint64_t id : ids) gens.push_back(family.generator(id));

  lp::LinearProgram program(n);
  program.add_constraint(std::vector<double>(n, 1.0), lp::Sense::kLessEqual, 1.0 + slack);
  program.add_constraint(std::vector<double>(n, 1.0), lp::Sense::kGreaterEqual, 1.0 - slack);
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<double> lo(n), hi(n);
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = gens[k].lo[d];
      hi[k] = gens[k].hi[d];
    }
    program.add_constraint(std::move(lo), lp::Sense::kLessEqual, target[d] + slack);
    program.add_constraint(std::move(hi), lp::Sense::kGreaterEqual, target[d] - slack);
  }
  const lp::Solution sol = lp::solve(program, lp_options);
  out.lp_iterations = sol.iterations;
  out.lp_status = sol.status;
  if (sol.status != lp::Status::kOptimal) return out;

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (sol.x[k] > weight_floor) {
      out.ids.push_back(ids[k]);
      out.weights.push_back(sol.x[k]);
      total += sol.x[k];
    }
  }
  if (out.ids.empty() || total <= 0.0) return out;
  for (double& w : out.weights) w /= total;

  // Place every kept generator at the same relative position inside its box,
  // chosen per coordinate so that the weighted mean hits the target.
  std::vector<const Generator*> kept;
  for (std::size_t k = 0; k < n; ++k) {
    if (sol.x[k] > weight_floor) kept.push_back(&gens[k]);
  }
  std::vector<double> lambda(dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    double mean_lo = 0.0, mean_width = 0.0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      mean_lo += out.weights[k] * kept[k]->lo[d];
      mean_width += out.weights[k] * (kept[k]->hi[d] - kept[k]->lo[d]);
    }
    lambda[d] = mean_width > 0.0 ? std::clamp((target[d] - mean_lo) / mean_width, 0.0, 1.0) : 0.0;
  }
  out.points.reserve(kept.size());
  for (const Generator* g : kept) {
    std::vector<double> p(dim);
    for (std::size_t d = 0; d < dim; ++d) p[d] = g->lo[d] + lambda[d] * (g->hi[d] - g->lo[d]);
    out.points.push_back(std::move(p));
  }
  out.found = true;
  return out;
}

}  // namespace leggett
