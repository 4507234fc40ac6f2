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
#include <utility>
#include <vector>

#include "leggett/simplex.hpp"

namespace leggett {

/// A box [lo, hi] in coordinate space; a point when lo == hi. Each membership
/// problem asks whether a target lies in the convex hull of such boxes.
struct Generator {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Maximum of theta.x over a generator box.
double support_value(const std::vector<double>& theta, const Generator& g);

/// Access to a (possibly implicit) generator family.
struct GeneratorFamily {
  std::size_t dimension = 0;
  std::function<Generator(std::uint64_t id)> generator;
  /// Up to `count` generators with the largest support value for theta,
  /// sorted by decreasing value. The first entry is the exact maximum.
  std::function<std::vector<std::pair<double, std::uint64_t>>(const std::vector<double>& theta,
                                                              std::size_t count)>
      best;
  /// Initial cut set.
  std::vector<std::uint64_t> seeds;
};

struct SeparationOptions {
  std::size_t max_rounds = 5000;
  std::size_t cuts_per_round = 16;
  /// A generator counts as violated when its support exceeds the master
  /// bound by more than this.
  double cut_tolerance = 1e-10;
  lp::Options lp{};
};

struct SeparationResult {
  /// Functional with every coefficient in [-1, 1].
  std::vector<double> theta;
  double value = 0.0;   ///< theta . target
  double bound = 0.0;   ///< exact max of theta over the family
  double margin = 0.0;  ///< value - bound
  std::vector<std::uint64_t> active;
  std::size_t rounds = 0;
  std::size_t lp_iterations = 0;
  bool converged = false;
};

/// Maximizes value - bound over box-normalized functionals by cutting planes.
/// A positive margin certifies that the target lies outside the hull; a zero
/// margin means the active generators already contain it.
SeparationResult max_margin_separation(const GeneratorFamily& family,
                                       const std::vector<double>& target,
                                       const SeparationOptions& options = {});

struct HullWitness {
  bool found = false;
  std::vector<std::uint64_t> ids;
  std::vector<double> weights;
  /// Per-generator point inside its box; the weighted mean is the target.
  std::vector<std::vector<double>> points;
  std::size_t lp_iterations = 0;
  lp::Status lp_status = lp::Status::kIterationLimit;
};

/// Solves for weights on `ids` reproducing `target` to within `slack` per
/// coordinate, then drops weights <= weight_floor and renormalizes.
HullWitness hull_witness(const GeneratorFamily& family, const std::vector<std::uint64_t>& ids,
                         const std::vector<double>& target, double slack, double weight_floor,
                         const lp::Options& lp_options = {});

}  // namespace leggett
