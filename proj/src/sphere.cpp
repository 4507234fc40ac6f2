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

#include "leggett/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "leggett/errors.hpp"

namespace leggett {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const Vec3& p, const Vec3& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }

UnitVector3 UnitVector3::from_components(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw InvalidArgument("unit vector components must be finite");
  }
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n < 1e-300) {
    throw InvalidArgument("cannot normalize the zero vector");
  }
  return UnitVector3(x / n, y / n, z / n);
}

UnitVector3 UnitVector3::from_spherical(double theta, double phi) {
  const double s = std::sin(theta);
  return from_components(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

double clamp_checked(double x, double lo, double hi) {
  if (std::isnan(x)) throw NumericDomainError("NaN encountered while clamping");
  if (x < lo - kClampSlack || x > hi + kClampSlack) {
    throw NumericDomainError("value " + std::to_string(x) + " outside [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "] beyond rounding slack");
  }
  return x < lo ? lo : (x > hi ? hi : x);
}

double dot(const UnitVector3& p, const UnitVector3& q) {
  return clamp_checked(p.x() * q.x() + p.y() * q.y() + p.z() * q.z(), -1.0, 1.0);
}

double dot(const UnitVector3& p, const Vec3& q) { return p.x() * q.x + p.y() * q.y + p.z() * q.z; }

double angle_between(const UnitVector3& p, const UnitVector3& q) {
  // atan2 form stays accurate for nearly parallel vectors.
  const Vec3 a = p.vec();
  const Vec3 b = q.vec();
  const Vec3 cross{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  return std::atan2(cross.norm(), dot(a, b));
}

QuadratureScheme::QuadratureScheme(std::vector<UnitVector3> nodes, std::vector<double> weights,
                                   double declared_tolerance)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), declared_tolerance_(declared_tolerance) {
  if (nodes_.size() < 2) throw InvalidArgument("a quadrature scheme needs at least 2 nodes");
  if (nodes_.size() != weights_.size()) {
    throw InvalidArgument("node and weight counts differ");
  }
  CompensatedSum total;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and >= 0");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw InvalidArgument("quadrature weights must sum to 1");
  }
}

double QuadratureTolerances::for_size(std::size_t n) const {
  if (n >= 100000) return at_1e5;
  if (n >= 1000) return at_1e3;
  return coarse;
}

QuadratureScheme fibonacci_grid(std::size_t n, const QuadratureTolerances& tol) {
  if (n < 2) throw InvalidArgument("fibonacci_grid requires n >= 2");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double dn = static_cast<double>(n);
  std::vector<UnitVector3> nodes;
  nodes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Cell-centred heights: z_k = 1 - (2k+1)/n gives equal-area bands.
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / dn;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(k);
    nodes.push_back(UnitVector3::from_components(r * std::cos(phi), r * std::sin(phi), z));
  }
  return QuadratureScheme(std::move(nodes), std::vector<double>(n, 1.0 / dn), tol.for_size(n));
}

QuadratureScheme monte_carlo_grid(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("monte_carlo_grid requires n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<UnitVector3> nodes;
  nodes.reserve(n);
  while (nodes.size() < n) {
    const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    if (x * x + y * y + z * z < 1e-24) continue;
    nodes.push_back(UnitVector3::from_components(x, y, z));
  }
  // Monte Carlo error scales like 1/sqrt(n); declare three standard errors.
  const double tol = 3.0 / std::sqrt(static_cast<double>(n));
  return QuadratureScheme(std::move(nodes), std::vector<double>(n, 1.0 / static_cast<double>(n)), tol);
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    carry_ += (sum_ - t) + v;
  } else {
    carry_ += (v - t) + sum_;
  }
  sum_ = t;
}

double integrate_sphere(const std::function<double(const UnitVector3&)>& f,
                        const QuadratureScheme& scheme) {
  CompensatedSum acc;
  const auto& nodes = scheme.nodes();
  const auto& weights = scheme.weights();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = f(nodes[k]);
    if (!std::isfinite(v)) {
      throw NumericDomainError("integrand is not finite at node " + std::to_string(k));
    }
    acc.add(weights[k] * v);
  }
  return acc.value();
}

double half_norm_identity(const UnitVector3& a, const UnitVector3& b, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  const double arg = clamp_checked((1.0 + sign * dot(a, b)) / 2.0, 0.0, 1.0);
  return std::sqrt(arg);
}

}  // namespace leggett
