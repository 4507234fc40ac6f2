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
#include <optional>
#include <string>
#include <vector>

#include "leggett/correlation.hpp"
#include "leggett/membership.hpp"

namespace leggett::presets {

/// Four coplanar directions at 0, 45, 90 and 135 degrees in the x-y plane.
std::vector<UnitVector3> equatorial_settings();

/// n-node Fibonacci lattice directions, used for both parties.
std::vector<UnitVector3> well_spread_settings(std::size_t n = 10);

/// Overrides for the hidden-variable grid of a preset; unset fields keep the
/// preset default.
struct GridOverride {
  std::optional<GridMode> mode;
  std::optional<std::size_t> n;
};

/// Named example: target correlation plus the grid it is classified on and
/// the expected (Leggett, Bell) outcome.
struct Example {
  std::string name;
  BinaryCorrelation target;
  HiddenVariableGrid grid;
  /// "Feasible", "Infeasible" (either kind) or "InfeasibleExact".
  std::string expected_leggett;
  std::string expected_bell;
};

/// Uniform outcomes on the equatorial settings; product grid 8x8.
Example fully_random(const GridOverride& g = {});
/// Werner V = 1 on the equatorial settings; antipodal grid n = 200 plus the
/// pair (ez, -ez) orthogonal to every setting.
Example singlet_equatorial(const GridOverride& g = {});
/// PR box on a = b = {ex, ey}; product grid 8x8 plus (ez, ez).
Example pr_box(const GridOverride& g = {});
/// All outcomes +1 on two distinct settings per party.
Example deterministic(const GridOverride& g = {});
/// Werner V = 0.99 on 10 + 10 well-spread settings; product grid 48x48.
Example werner_well_spread(const GridOverride& g = {});

/// The classification table, in display order.
std::vector<Example> classification_examples(const GridOverride& g = {});

}  // namespace leggett::presets
