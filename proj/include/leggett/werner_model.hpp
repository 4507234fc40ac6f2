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
#include <functional>
#include <optional>
#include <vector>

#include "leggett/correlation.hpp"
#include "leggett/sphere.hpp"

namespace leggett {

/// Upper end of the visibility range covered by the explicit Werner model,
/// (1 + 1/sqrt(2)) / 2.
inline constexpr double kCriticalVisibility = 0.85355339059327376220;

/// Mixing weights for the two positivity endpoints of a component correlator.
struct EndpointWeights {
  double p_plus = 0.5;
  double p_minus = 0.5;
};

/// p_pm = (1 - sqrt((1 -+ t)/2) -+ V t) / (2 - sqrt((1+t)/2) - sqrt((1-t)/2)).
/// Throws InvalidArgument for t outside [-1, 1] or V < 0, and RegimeError for
/// V > kCriticalVisibility + 1e-12.
EndpointWeights p_plus_minus(double t, double visibility);

/// Same closed form without the regime check, for probing where the
/// construction breaks down. Weights may be negative.
EndpointWeights p_plus_minus_unchecked(double t, double visibility);

/// Denominator of the endpoint weights; bounded below by 2 - sqrt(2).
double endpoint_weight_denominator(double t);

/// Correlator of the antipodal component (u, -u):
/// p_minus [-1 + |u.(a-b)|] + p_plus [1 - |u.(a+b)|].
double component_correlator(const UnitVector3& u, const UnitVector3& a, const UnitVector3& b,
                            double visibility);

struct ConditionSlack {
  double lower = 0.0;
  double upper = 0.0;
  double min() const { return lower < upper ? lower : upper; }
};

/// Slack in -1 + sqrt((1-t)/2) <= -V t <= 1 - sqrt((1+t)/2).
ConditionSlack necessary_condition_slack(double t, double visibility);

/// One hidden-variable pair with Malus-law marginals u.a and v.b and a free
/// correlator.
struct LeggettComponent {
  UnitVector3 u;
  UnitVector3 v;
  std::function<double(const UnitVector3& a, const UnitVector3& b)> correlator;

  double marginal_a(const UnitVector3& a) const { return dot(u, a); }
  double marginal_b(const UnitVector3& b) const { return dot(v, b); }
  /// Materializes P(alpha, beta | a, b); throws PositivityViolation if invalid.
  OutcomeDistribution distribution(const UnitVector3& a, const UnitVector3& b) const;
};

/// Finite mixture of Leggett components.
class LeggettModel {
 public:
  /// Weights must be non-negative and sum to 1 within 1e-12.
  LeggettModel(std::vector<LeggettComponent> components, std::vector<double> weights);

  const std::vector<LeggettComponent>& components() const { return components_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return components_.size(); }

  /// Mixture (MA, MB, C) at one setting pair.
  Moments moments(const UnitVector3& a, const UnitVector3& b) const;
  /// Mixture evaluated on every pair of a settings grid.
  BinaryCorrelation evaluate(const SettingsGrid& grid) const;
  /// Number of components whose correlator leaves its positivity interval by
  /// more than `tolerance` at (a, b).
  std::size_t count_positivity_violations(const UnitVector3& a, const UnitVector3& b,
                                          double tolerance = kPositivityTolerance) const;

 private:
  std::vector<LeggettComponent> components_;
  std::vector<double> weights_;
};

/// Antipodal Werner model: components (u_k, -u_k) on the scheme nodes with
/// the scheme weights. Throws RegimeError before construction when V is out
/// of range.
LeggettModel build_werner_model(double visibility, const QuadratureScheme& scheme);

struct ThresholdScan {
  /// Largest visibility for which the necessary condition holds on the scan.
  double critical_visibility = 0.0;
  /// Correlation t = a.b where the slack binds at the critical visibility.
  double binding_t = 0.0;
  /// Minimum slack at the returned visibility.
  double min_slack = 0.0;
  std::size_t bisection_steps = 0;
};

/// Minimum of min(lower, upper) slack over a uniform t-grid of `resolution`
/// points on [-1, 1], refined by three 10x zooms around the argmin.
/// Returns {min slack, argmin t}.
std::pair<double, double> min_condition_slack(double visibility, std::size_t resolution);

/// Bisection on [0.5, 1] to 1e-9 for the largest V with non-negative slack.
/// Throws InvalidArgument for resolution < 1000.
ThresholdScan critical_visibility(std::size_t resolution);

struct WeightScan {
  double min_p_plus = 0.0;
  double argmin_p_plus = 0.0;
  double min_p_minus = 0.0;
  double argmin_p_minus = 0.0;
  bool negative() const { return min_p_plus < 0.0 || min_p_minus < 0.0; }
};

/// Minima of p_plus and p_minus over a uniform t-grid (no regime check).
WeightScan scan_endpoint_weights(double visibility, std::size_t resolution);

}  // namespace leggett
