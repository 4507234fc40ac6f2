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

#include "leggett/werner_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leggett/errors.hpp"

namespace leggett {

namespace {

void check_t(double t) {
  if (!(t >= -1.0 - kClampSlack && t <= 1.0 + kClampSlack)) {
    throw InvalidArgument("t = " + std::to_string(t) + " outside [-1, 1]");
  }
}

double root_half(double x) { return std::sqrt(std::max(0.0, x / 2.0)); }

double t_at(std::size_t k, std::size_t n, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace

double endpoint_weight_denominator(double t) {
  return 2.0 - root_half(1.0 + t) - root_half(1.0 - t);
}

EndpointWeights p_plus_minus_unchecked(double t, double visibility) {
  check_t(t);
  t = std::clamp(t, -1.0, 1.0);
  const double denom = endpoint_weight_denominator(t);
  return {(1.0 - root_half(1.0 - t) - visibility * t) / denom,
          (1.0 - root_half(1.0 + t) + visibility * t) / denom};
}

EndpointWeights p_plus_minus(double t, double visibility) {
  if (!(visibility >= 0.0)) throw InvalidArgument("visibility must be >= 0");
  if (visibility > kCriticalVisibility + 1e-12) {
    throw RegimeError("visibility " + std::to_string(visibility) +
                      " exceeds the range of the explicit model (1 + 1/sqrt(2))/2");
  }
  return p_plus_minus_unchecked(t, visibility);
}

double component_correlator(const UnitVector3& u, const UnitVector3& a, const UnitVector3& b,
                            double visibility) {
  const auto [p_plus, p_minus] = p_plus_minus(dot(a, b), visibility);
  const double lower = -1.0 + std::abs(dot(u, a.vec() - b.vec()));
  const double upper = 1.0 - std::abs(dot(u, a.vec() + b.vec()));
  return p_minus * lower + p_plus * upper;
}

ConditionSlack necessary_condition_slack(double t, double visibility) {
  check_t(t);
  t = std::clamp(t, -1.0, 1.0);
  const double target = -visibility * t;
  return {target - (-1.0 + root_half(1.0 - t)), (1.0 - root_half(1.0 + t)) - target};
}

OutcomeDistribution LeggettComponent::distribution(const UnitVector3& a,
                                                   const UnitVector3& b) const {
  return reconstruct_distribution(marginal_a(a), marginal_b(b), correlator(a, b));
}

LeggettModel::LeggettModel(std::vector<LeggettComponent> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty() || components_.size() != weights_.size()) {
    throw InvalidArgument("a Leggett model needs one weight per component");
  }
  CompensatedSum total;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("model weights must be >= 0");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw InvalidArgument("model weights must sum to 1");
  }
}

Moments LeggettModel::moments(const UnitVector3& a, const UnitVector3& b) const {
  CompensatedSum ma, mb, c;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& comp = components_[k];
    const double w = weights_[k];
    ma.add(w * comp.marginal_a(a));
    mb.add(w * comp.marginal_b(b));
    c.add(w * comp.correlator(a, b));
  }
  return {ma.value(), mb.value(), c.value()};
}

BinaryCorrelation LeggettModel::evaluate(const SettingsGrid& grid) const {
  const std::size_t na = grid.num_alice(), nb = grid.num_bob();
  std::vector<double> ma(na), mb(nb), c(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const Moments m = moments(grid.alice()[i], grid.bob()[j]);
      c[i * nb + j] = m.c;
      // Marginals of a Leggett mixture depend only on the local setting.
      if (j == 0) ma[i] = m.ma;
      if (i == 0) mb[j] = m.mb;
    }
  }
  return BinaryCorrelation(grid, std::move(ma), std::move(mb), std::move(c));
}

std::size_t LeggettModel::count_positivity_violations(const UnitVector3& a, const UnitVector3& b,
                                                      double tolerance) const {
  std::size_t count = 0;
  for (const auto& comp : components_) {
    const auto [lo, hi] = positivity_bounds(comp.marginal_a(a), comp.marginal_b(b));
    const double c = comp.correlator(a, b);
    if (c < lo - tolerance || c > hi + tolerance) ++count;
  }
  return count;
}

LeggettModel build_werner_model(double visibility, const QuadratureScheme& scheme) {
  // Validates V (range and regime) before any component exists.
  p_plus_minus(0.0, visibility);
  std::vector<LeggettComponent> components;
  components.reserve(scheme.size());
  for (const auto& u : scheme.nodes()) {
    components.push_back({u, -u, [u, visibility](const UnitVector3& a, const UnitVector3& b) {
                            return component_correlator(u, a, b, visibility);
                          }});
  }
  return LeggettModel(std::move(components), scheme.weights());
}

std::pair<double, double> min_condition_slack(double visibility, std::size_t resolution) {
  if (resolution < 3) throw InvalidArgument("resolution must be >= 3");
  auto scan = [visibility](std::size_t n, double lo, double hi) {
    double best = std::numeric_limits<double>::infinity();
    double best_t = lo;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = t_at(k, n, lo, hi);
      const double s = necessary_condition_slack(t, visibility).min();
      if (s < best) {
        best = s;
        best_t = t;
      }
    }
    return std::pair{best, best_t};
  };

  auto [best, best_t] = scan(resolution, -1.0, 1.0);
  double half_width = 2.0 / static_cast<double>(resolution - 1);
  for (int round = 0; round < 3; ++round) {
    const double lo = std::max(-1.0, best_t - half_width);
    const double hi = std::min(1.0, best_t + half_width);
    const auto [s, t] = scan(21, lo, hi);
    if (s < best) {
      best = s;
      best_t = t;
    }
    half_width /= 10.0;
  }
  return {best, best_t};
}

ThresholdScan critical_visibility(std::size_t resolution) {
  if (resolution < 1000) throw InvalidArgument("critical_visibility requires resolution >= 1000");
  double lo = 0.5, hi = 1.0;
  ThresholdScan out;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (min_condition_slack(mid, resolution).first >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.bisection_steps;
  }
  const auto [slack, t] = min_condition_slack(lo, resolution);
  out.critical_visibility = lo;
  out.binding_t = t;
  out.min_slack = slack;
  return out;
}

WeightScan scan_endpoint_weights(double visibility, std::size_t resolution) {
  if (resolution < 2) throw InvalidArgument("resolution must be >= 2");
  WeightScan out;
  out.min_p_plus = std::numeric_limits<double>::infinity();
  out.min_p_minus = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < resolution; ++k) {
    const double t = t_at(k, resolution, -1.0, 1.0);
    const auto w = p_plus_minus_unchecked(t, visibility);
    if (w.p_plus < out.min_p_plus) {
      out.min_p_plus = w.p_plus;
      out.argmin_p_plus = t;
    }
    if (w.p_minus < out.min_p_minus) {
      out.min_p_minus = w.p_minus;
      out.argmin_p_minus = t;
    }
  }
  return out;
}

}  // namespace leggett
