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

#include "leggett/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leggett/errors.hpp"

namespace leggett {

std::string to_string(GridMode mode) {
  return mode == GridMode::kAntipodal ? "antipodal" : "product";
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kFeasible:
      return "Feasible";
    case VerdictStatus::kInfeasibleOnGrid:
      return "InfeasibleOnGrid";
    case VerdictStatus::kInfeasibleExact:
      return "InfeasibleExact";
    case VerdictStatus::kUndetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

// ---------------------------------------------------------------------------
// HiddenVariableGrid

HiddenVariableGrid::HiddenVariableGrid(GridMode mode, std::size_t n_u, std::size_t n_v)
    : mode_(mode), n_u_(n_u), n_v_(n_v) {}

void HiddenVariableGrid::append(const UnitVector3& u, const UnitVector3& v, bool from_lattice) {
  if (mode_ == GridMode::kAntipodal && (u.vec() + v.vec()).norm() > 1e-12) {
    throw InvalidArgument("antipodal grids require v = -u for every pair");
  }
  pairs_.emplace_back(u, v);
  if (!from_lattice) extra_.emplace_back(u, v);
}

HiddenVariableGrid HiddenVariableGrid::antipodal(std::size_t n) {
  HiddenVariableGrid grid(GridMode::kAntipodal, n, n);
  const auto scheme = fibonacci_grid(n);
  for (const auto& u : scheme.nodes()) grid.append(u, -u, true);
  return grid;
}

HiddenVariableGrid HiddenVariableGrid::product(std::size_t n_u, std::size_t n_v) {
  HiddenVariableGrid grid(GridMode::kIndependentProduct, n_u, n_v);
  const auto us = fibonacci_grid(n_u);
  const auto vs = fibonacci_grid(n_v);
  grid.pairs_.reserve(n_u * n_v + n_u);
  for (const auto& u : us.nodes()) {
    for (const auto& v : vs.nodes()) grid.append(u, v, true);
  }
  // Independent lattices never contain exact antipodes, which Werner-like
  // targets need; add (u, -u) for every u node.
  for (const auto& u : us.nodes()) grid.append(u, -u, true);
  return grid;
}

HiddenVariableGrid HiddenVariableGrid::from_pairs(
    GridMode mode, std::vector<std::pair<UnitVector3, UnitVector3>> pairs) {
  if (pairs.empty()) throw InvalidArgument("hidden-variable grid must be non-empty");
  HiddenVariableGrid grid(mode, 0, 0);
  for (const auto& [u, v] : pairs) grid.append(u, v, false);
  return grid;
}

HiddenVariableGrid HiddenVariableGrid::with_pairs(
    const std::vector<std::pair<UnitVector3, UnitVector3>>& extra) const {
  HiddenVariableGrid grid = *this;
  for (const auto& [u, v] : extra) grid.append(u, v, false);
  return grid;
}

HiddenVariableGrid HiddenVariableGrid::refined(std::size_t factor) const {
  if (factor == 0) throw InvalidArgument("refinement factor must be positive");
  HiddenVariableGrid out(mode_, 0, 0);
  if (mode_ == GridMode::kAntipodal) {
    const std::size_t base = n_u_ > 0 ? n_u_ : extra_.size();
    out = antipodal(std::max<std::size_t>(2, base * factor));
  } else {
    const double scale = std::sqrt(static_cast<double>(factor));
    const double fallback = std::sqrt(static_cast<double>(extra_.size()));
    const double nu = n_u_ > 0 ? static_cast<double>(n_u_) : fallback;
    const double nv = n_v_ > 0 ? static_cast<double>(n_v_) : fallback;
    std::size_t fine_u = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(nu * scale)));
    std::size_t fine_v = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(nv * scale)));
    // Lattice pairs (n_u n_v plus n_u antipodes) must grow by at least `factor`.
    const double target = static_cast<double>(factor) * (nu * nv + nu);
    while (static_cast<double>(fine_u * fine_v + fine_u) < target) {
      if (fine_u <= fine_v) {
        ++fine_u;
      } else {
        ++fine_v;
      }
    }
    out = product(fine_u, fine_v);
  }
  return out.with_pairs(extra_);
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

std::vector<double> flatten(const BinaryCorrelation& corr) {
  std::vector<double> out;
  out.reserve(corr.num_alice() + corr.num_bob() + corr.c_values().size());
  out.insert(out.end(), corr.ma_values().begin(), corr.ma_values().end());
  out.insert(out.end(), corr.mb_values().begin(), corr.mb_values().end());
  out.insert(out.end(), corr.c_values().begin(), corr.c_values().end());
  return out;
}

Certificate to_certificate(const SeparationResult& sep, std::size_t na, std::size_t nb) {
  Certificate cert;
  cert.alpha.assign(sep.theta.begin(), sep.theta.begin() + static_cast<std::ptrdiff_t>(na));
  cert.beta.assign(sep.theta.begin() + static_cast<std::ptrdiff_t>(na),
                   sep.theta.begin() + static_cast<std::ptrdiff_t>(na + nb));
  cert.gamma.assign(sep.theta.begin() + static_cast<std::ptrdiff_t>(na + nb), sep.theta.end());
  cert.value = sep.value;
  cert.bound = sep.bound;
  cert.margin = sep.margin;
  return cert;
}

// Top `count` entries of (score, id), sorted by decreasing score.
class TopK {
 public:
  explicit TopK(std::size_t count) : count_(std::max<std::size_t>(1, count)) {}
  void offer(double score, std::uint64_t id) { items_.emplace_back(score, id); }
  std::vector<std::pair<double, std::uint64_t>> take() {
    const std::size_t k = std::min(count_, items_.size());
    std::partial_sort(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(k), items_.end(),
                      [](const auto& x, const auto& y) {
                        return x.first > y.first || (x.first == y.first && x.second < y.second);
                      });
    items_.resize(k);
    return std::move(items_);
  }

 private:
  std::size_t count_;
  std::vector<std::pair<double, std::uint64_t>> items_;
};

// Precomputed Malus marginals of every hidden pair at every setting.
struct LeggettTables {
  std::size_t na = 0;
  std::size_t nb = 0;
  std::vector<double> ua;  // pair-major, na per pair
  std::vector<double> vb;  // pair-major, nb per pair

  LeggettTables(const SettingsGrid& settings, const HiddenVariableGrid& grid)
      : na(settings.num_alice()), nb(settings.num_bob()) {
    ua.reserve(grid.size() * na);
    vb.reserve(grid.size() * nb);
    for (const auto& [u, v] : grid.pairs()) {
      for (const auto& a : settings.alice()) ua.push_back(dot(u, a));
      for (const auto& b : settings.bob()) vb.push_back(dot(v, b));
    }
  }

  double support(const std::vector<double>& theta, std::size_t k) const {
    const double* x = &ua[k * na];
    const double* y = &vb[k * nb];
    double total = 0.0;
    for (std::size_t i = 0; i < na; ++i) total += theta[i] * x[i];
    for (std::size_t j = 0; j < nb; ++j) total += theta[na + j] * y[j];
    const double* gamma = &theta[na + nb];
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        const auto [lo, hi] = positivity_bounds(x[i], y[j]);
        const double g = gamma[i * nb + j];
        total += g >= 0.0 ? g * hi : g * lo;
      }
    }
    return total;
  }

  Generator generator(std::size_t k) const {
    Generator g;
    const std::size_t dim = na + nb + na * nb;
    g.lo.resize(dim);
    g.hi.resize(dim);
    for (std::size_t i = 0; i < na; ++i) g.lo[i] = g.hi[i] = ua[k * na + i];
    for (std::size_t j = 0; j < nb; ++j) g.lo[na + j] = g.hi[na + j] = vb[k * nb + j];
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        const auto [lo, hi] = positivity_bounds(ua[k * na + i], vb[k * nb + j]);
        g.lo[na + nb + i * nb + j] = lo;
        g.hi[na + nb + i * nb + j] = hi;
      }
    }
    return g;
  }
};

GeneratorFamily leggett_family(const LeggettTables& tables, std::size_t num_pairs) {
  GeneratorFamily family;
  family.dimension = tables.na + tables.nb + tables.na * tables.nb;
  family.generator = [&tables](std::uint64_t id) { return tables.generator(id); };
  family.best = [&tables, num_pairs](const std::vector<double>& theta, std::size_t count) {
    TopK top(count);
    for (std::size_t k = 0; k < num_pairs; ++k) top.offer(tables.support(theta, k), k);
    return top.take();
  };
  constexpr std::size_t kMaxSeeds = 256;
  const std::size_t stride = std::max<std::size_t>(1, num_pairs / kMaxSeeds);
  for (std::size_t k = 0; k < num_pairs; k += stride) family.seeds.push_back(k);
  return family;
}

// Expands each component through P = (1 + a MA + b MB + ab C)/4, mixes the
// probabilities, and compares the resulting moments to the target.
double leggett_witness_residual(const std::vector<LeggettWitnessComponent>& witness,
                                const BinaryCorrelation& target) {
  const std::size_t na = target.num_alice(), nb = target.num_bob();
  double worst = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      OutcomeDistribution mixed;
      for (const auto& comp : witness) {
        const auto d = reconstruct_distribution(dot(comp.u, target.grid().alice()[i]),
                                                dot(comp.v, target.grid().bob()[j]),
                                                comp.correlators[i * nb + j]);
        for (std::size_t o = 0; o < 4; ++o) mixed.p[o] += comp.weight * d.p[o];
      }
      const Moments m = extract_moments(mixed);
      worst = std::max({worst, std::abs(m.ma - target.ma(i)), std::abs(m.mb - target.mb(j)),
                        std::abs(m.c - target.c(i, j))});
    }
  }
  return worst;
}

std::vector<LeggettWitnessComponent> to_leggett_witness(const HullWitness& hull,
                                                        const HiddenVariableGrid& grid,
                                                        std::size_t na, std::size_t nb) {
  std::vector<LeggettWitnessComponent> out;
  for (std::size_t k = 0; k < hull.ids.size(); ++k) {
    const auto& [u, v] = grid.pairs()[hull.ids[k]];
    const auto& p = hull.points[k];
    out.push_back({u, v, hull.weights[k],
                   std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(na + nb), p.end())});
  }
  return out;
}

}  // namespace

double functional_value(const Certificate& cert, const BinaryCorrelation& corr) {
  double total = 0.0;
  for (std::size_t i = 0; i < corr.num_alice(); ++i) total += cert.alpha[i] * corr.ma(i);
  for (std::size_t j = 0; j < corr.num_bob(); ++j) total += cert.beta[j] * corr.mb(j);
  for (std::size_t ij = 0; ij < corr.c_values().size(); ++ij) {
    total += cert.gamma[ij] * corr.c_values()[ij];
  }
  return total;
}

double leggett_bound(const Certificate& cert, const SettingsGrid& settings,
                     const HiddenVariableGrid& grid) {
  const LeggettTables tables(settings, grid);
  std::vector<double> theta;
  theta.insert(theta.end(), cert.alpha.begin(), cert.alpha.end());
  theta.insert(theta.end(), cert.beta.begin(), cert.beta.end());
  theta.insert(theta.end(), cert.gamma.begin(), cert.gamma.end());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) best = std::max(best, tables.support(theta, k));
  return best;
}

// ---------------------------------------------------------------------------
// Leggett feasibility

FeasibilityVerdict leggett_feasibility(const BinaryCorrelation& corr,
                                       const HiddenVariableGrid& grid,
                                       const SolverOptions& options) {
  if (!validate(corr).empty()) {
    throw InvalidArgument("target correlation violates positivity");
  }
  const std::size_t na = corr.num_alice(), nb = corr.num_bob();
  const LeggettTables tables(corr.grid(), grid);
  const GeneratorFamily family = leggett_family(tables, grid.size());
  const std::vector<double> target = flatten(corr);

  FeasibilityVerdict verdict;
  verdict.diagnostics.grid_mode = to_string(grid.mode());
  verdict.diagnostics.grid_pairs = grid.size();

  const SeparationResult sep = max_margin_separation(family, target, options.separation);
  verdict.diagnostics.iterations = sep.lp_iterations;
  verdict.diagnostics.rounds = sep.rounds;
  if (!sep.converged) {
    verdict.diagnostics.note = "cutting-plane separation did not converge";
    return verdict;
  }

  if (sep.margin > options.margin_tolerance) {
    Certificate cert = to_certificate(sep, na, nb);
    const HiddenVariableGrid fine = grid.refined(options.verification_factor);
    const double fine_bound = leggett_bound(cert, corr.grid(), fine);
    cert.verification_bound = fine_bound;
    cert.verification_margin = cert.value - fine_bound;
    cert.verification_pairs = fine.size();
    if (*cert.verification_margin > options.margin_tolerance) {
      verdict.status = VerdictStatus::kInfeasibleOnGrid;
    } else {
      verdict.diagnostics.note = "certificate does not survive the verification grid";
    }
    verdict.certificate = std::move(cert);
    return verdict;
  }

  HullWitness hull = hull_witness(family, sep.active, target, options.equality_slack,
                                  options.weight_floor, options.separation.lp);
  verdict.diagnostics.iterations += hull.lp_iterations;
  if (!hull.found) {
    std::vector<std::uint64_t> all(grid.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    hull = hull_witness(family, all, target, options.equality_slack, options.weight_floor,
                        options.separation.lp);
    verdict.diagnostics.iterations += hull.lp_iterations;
  }
  if (!hull.found) {
    verdict.diagnostics.note = "no separating functional and no witness within tolerance";
    return verdict;
  }
  auto witness = to_leggett_witness(hull, grid, na, nb);
  const double residual = leggett_witness_residual(witness, corr);
  verdict.diagnostics.max_residual = residual;
  if (residual > options.witness_tolerance) {
    verdict.diagnostics.note = "witness residual above tolerance";
    return verdict;
  }
  verdict.status = VerdictStatus::kFeasible;
  verdict.leggett_witness = std::move(witness);
  return verdict;
}

std::optional<FeasibilityVerdict> extremal_marginal_shortcut(const BinaryCorrelation& corr,
                                                             double tolerance) {
  auto check = [tolerance](const std::vector<UnitVector3>& settings,
                           const std::vector<double>& marginals,
                           const char* party) -> std::optional<std::string> {
    // An extremal marginal s = +-1 at setting a forces u = s a.
    std::vector<std::pair<std::size_t, UnitVector3>> forced;
    for (std::size_t i = 0; i < settings.size(); ++i) {
      if (std::abs(marginals[i]) >= 1.0 - tolerance) {
        forced.emplace_back(i, marginals[i] > 0 ? settings[i] : -settings[i]);
      }
    }
    for (std::size_t x = 0; x < forced.size(); ++x) {
      for (std::size_t y = x + 1; y < forced.size(); ++y) {
        if (angle_between(forced[x].second, forced[y].second) > 1e-9) {
          return std::string(party) + " marginals at settings " + std::to_string(forced[x].first) +
                 " and " + std::to_string(forced[y].first) +
                 " are extremal but no unit vector produces both";
        }
      }
    }
    return std::nullopt;
  };

  auto reason = check(corr.grid().alice(), corr.ma_values(), "alice");
  if (!reason) reason = check(corr.grid().bob(), corr.mb_values(), "bob");
  if (!reason) return std::nullopt;
  FeasibilityVerdict verdict;
  verdict.status = VerdictStatus::kInfeasibleExact;
  verdict.diagnostics.note = *reason;
  return verdict;
}

// ---------------------------------------------------------------------------
// Bell local polytope

namespace {

// Strategy id: bit i (i < na) set means Alice outputs -1 at setting i; bit
// na + j likewise for Bob.
int output_bit(std::uint64_t id, std::size_t bit) { return ((id >> bit) & 1U) ? -1 : 1; }

struct BellScenario {
  std::size_t na = 0;
  std::size_t nb = 0;

  Generator generator(std::uint64_t id) const {
    Generator g;
    g.lo.resize(na + nb + na * nb);
    for (std::size_t i = 0; i < na; ++i) g.lo[i] = output_bit(id, i);
    for (std::size_t j = 0; j < nb; ++j) g.lo[na + j] = output_bit(id, na + j);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) g.lo[na + nb + i * nb + j] = g.lo[i] * g.lo[na + j];
    }
    g.hi = g.lo;
    return g;
  }

  // For each Alice strategy the best Bob response is pointwise.
  std::vector<std::pair<double, std::uint64_t>> best(const std::vector<double>& theta,
                                                     std::size_t count) const {
    TopK top(count);
    const std::uint64_t alice_count = std::uint64_t{1} << na;
    std::vector<double> score(nb);
    for (std::uint64_t am = 0; am < alice_count; ++am) {
      double total = 0.0;
      for (std::size_t i = 0; i < na; ++i) total += theta[i] * output_bit(am, i);
      for (std::size_t j = 0; j < nb; ++j) score[j] = theta[na + j];
      for (std::size_t i = 0; i < na; ++i) {
        const double a = output_bit(am, i);
        const double* gamma = &theta[na + nb + i * nb];
        for (std::size_t j = 0; j < nb; ++j) score[j] += a * gamma[j];
      }
      std::uint64_t id = am;
      for (std::size_t j = 0; j < nb; ++j) {
        total += std::abs(score[j]);
        if (score[j] < 0.0) id |= std::uint64_t{1} << (na + j);
      }
      top.offer(total, id);
    }
    return top.take();
  }
};

}  // namespace

FeasibilityVerdict bell_local_membership(const BinaryCorrelation& corr,
                                         const SolverOptions& options) {
  const std::size_t na = corr.num_alice(), nb = corr.num_bob();
  if (na + nb > options.max_bell_settings) {
    throw CapExceeded("bell_local_membership enumerates 2^(|A|+|B|) strategies; |A|+|B| = " +
                      std::to_string(na + nb) + " exceeds cap " +
                      std::to_string(options.max_bell_settings));
  }
  const BellScenario scenario{na, nb};
  const std::vector<double> target = flatten(corr);

  GeneratorFamily family;
  family.dimension = target.size();
  family.generator = [&scenario](std::uint64_t id) { return scenario.generator(id); };
  family.best = [&scenario](const std::vector<double>& theta, std::size_t count) {
    return scenario.best(theta, count);
  };
  const std::uint64_t total = std::uint64_t{1} << (na + nb);
  if (total <= 1024) {
    for (std::uint64_t id = 0; id < total; ++id) family.seeds.push_back(id);
  } else {
    family.seeds.push_back(0);
    for (const auto& [score, id] : scenario.best(target, 64)) family.seeds.push_back(id);
  }

  FeasibilityVerdict verdict;
  verdict.diagnostics.grid_mode = "deterministic-strategies";
  verdict.diagnostics.grid_pairs = static_cast<std::size_t>(total);

  const SeparationResult sep = max_margin_separation(family, target, options.separation);
  verdict.diagnostics.iterations = sep.lp_iterations;
  verdict.diagnostics.rounds = sep.rounds;
  if (!sep.converged) {
    verdict.diagnostics.note = "cutting-plane separation did not converge";
    return verdict;
  }
  if (sep.margin > options.margin_tolerance) {
    // The bound is an exact maximum over all strategies, so the certificate is exact.
    verdict.status = VerdictStatus::kInfeasibleExact;
    verdict.certificate = to_certificate(sep, na, nb);
    return verdict;
  }

  const HullWitness hull = hull_witness(family, sep.active, target, options.equality_slack,
                                        options.weight_floor, options.separation.lp);
  verdict.diagnostics.iterations += hull.lp_iterations;
  if (!hull.found) {
    verdict.diagnostics.note = "no separating functional and no witness within tolerance";
    return verdict;
  }
  std::vector<LocalStrategy> witness;
  std::vector<double> mixed(target.size(), 0.0);
  for (std::size_t k = 0; k < hull.ids.size(); ++k) {
    LocalStrategy s;
    for (std::size_t i = 0; i < na; ++i) s.alice.push_back(output_bit(hull.ids[k], i));
    for (std::size_t j = 0; j < nb; ++j) s.bob.push_back(output_bit(hull.ids[k], na + j));
    s.weight = hull.weights[k];
    const Generator g = scenario.generator(hull.ids[k]);
    for (std::size_t d = 0; d < target.size(); ++d) mixed[d] += s.weight * g.lo[d];
    witness.push_back(std::move(s));
  }
  double residual = 0.0;
  for (std::size_t d = 0; d < target.size(); ++d) {
    residual = std::max(residual, std::abs(mixed[d] - target[d]));
  }
  verdict.diagnostics.max_residual = residual;
  if (residual > options.witness_tolerance) {
    verdict.diagnostics.note = "witness residual above tolerance";
    return verdict;
  }
  verdict.status = VerdictStatus::kFeasible;
  verdict.local_witness = std::move(witness);
  return verdict;
}

Classification classify(const BinaryCorrelation& corr, const HiddenVariableGrid& grid,
                        const SolverOptions& options) {
  Classification out;
  if (auto shortcut = extremal_marginal_shortcut(corr)) {
    out.leggett = std::move(*shortcut);
  } else {
    out.leggett = leggett_feasibility(corr, grid, options);
  }
  out.bell = bell_local_membership(corr, options);
  return out;
}

}  // namespace leggett
