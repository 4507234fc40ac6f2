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
#include <cstdint>
#include <functional>
#include <vector>

namespace leggett {

/// Free 3-vector, used for sums and differences of unit vectors.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  friend Vec3 operator+(const Vec3& p, const Vec3& q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
  friend Vec3 operator-(const Vec3& p, const Vec3& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
  friend Vec3 operator*(double s, const Vec3& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(const Vec3& p, const Vec3& q);

/// A point on the Bloch sphere. Construction always normalizes, so the
/// components satisfy x^2 + y^2 + z^2 = 1 to rounding.
class UnitVector3 {
 public:
  /// Defaults to the north pole.
  UnitVector3() = default;

  /// Normalizes (x, y, z). Throws InvalidArgument for a zero or non-finite vector.
  static UnitVector3 from_components(double x, double y, double z);
  static UnitVector3 from_vec(const Vec3& v) { return from_components(v.x, v.y, v.z); }
  /// Polar angle theta from +z, azimuth phi from +x (radians).
  static UnitVector3 from_spherical(double theta, double phi);
  /// Point on the equator at azimuth phi (radians).
  static UnitVector3 equatorial(double phi) { return from_spherical(1.5707963267948966, phi); }

  static UnitVector3 ex() { return UnitVector3(1.0, 0.0, 0.0); }
  static UnitVector3 ey() { return UnitVector3(0.0, 1.0, 0.0); }
  static UnitVector3 ez() { return UnitVector3(0.0, 0.0, 1.0); }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 vec() const { return {x_, y_, z_}; }

  UnitVector3 operator-() const { return UnitVector3(-x_, -y_, -z_); }
  friend bool operator==(const UnitVector3&, const UnitVector3&) = default;

 private:
  UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

/// Inner product of two unit vectors, clamped to [-1, 1]. Drift beyond
/// kClampSlack raises NumericDomainError.
double dot(const UnitVector3& p, const UnitVector3& q);
double dot(const UnitVector3& p, const Vec3& q);

/// Angle between two unit vectors in radians.
double angle_between(const UnitVector3& p, const UnitVector3& q);

/// Largest rounding excess that clamping is allowed to absorb.
inline constexpr double kClampSlack = 1e-9;

/// Clamps x into [lo, hi]; throws NumericDomainError if x lies further than
/// kClampSlack outside.
double clamp_checked(double x, double lo, double hi);

/// Nodes and non-negative weights for integrating against du/4pi.
class QuadratureScheme {
 public:
  /// Validates node count (>= 2), weight signs, and normalization (1e-12).
  QuadratureScheme(std::vector<UnitVector3> nodes, std::vector<double> weights,
                   double declared_tolerance);

  const std::vector<UnitVector3>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  /// Expected absolute error for integrands of bounded variation such as |u.w|.
  double declared_tolerance() const { return declared_tolerance_; }

  friend bool operator==(const QuadratureScheme&, const QuadratureScheme&) = default;

 private:
  std::vector<UnitVector3> nodes_;
  std::vector<double> weights_;
  double declared_tolerance_;
};

/// Default quadrature tolerance for an n-node equal-weight scheme:
/// 5e-4 from 1e5 nodes, 5e-3 from 1e3 nodes, 5e-2 below.
struct QuadratureTolerances {
  double coarse = 5e-2;
  double at_1e3 = 5e-3;
  double at_1e5 = 5e-4;

  double for_size(std::size_t n) const;
};

/// Fibonacci (golden-angle) lattice with n equal weights. Deterministic.
QuadratureScheme fibonacci_grid(std::size_t n, const QuadratureTolerances& tol = {});

/// Uniform random nodes with equal weights, for statistical cross-checks.
QuadratureScheme monte_carlo_grid(std::size_t n, std::uint64_t seed);

/// Sum of weight_k * f(node_k) with compensated summation in node order.
double integrate_sphere(const std::function<double(const UnitVector3&)>& f,
                        const QuadratureScheme& scheme);

/// Closed form of the integral of |u.(a + sign*b)| du/4pi, i.e. sqrt((1 + sign*a.b)/2).
double half_norm_identity(const UnitVector3& a, const UnitVector3& b, int sign);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace leggett
