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

#include "leggett/presets.hpp"

#include <cmath>
#include <numbers>

namespace leggett::presets {

namespace {

// Extra pair orthogonal to the x-y plane, shaped to fit the grid mode.
std::pair<UnitVector3, UnitVector3> polar_pair(GridMode mode) {
  const UnitVector3 ez = UnitVector3::ez();
  return mode == GridMode::kAntipodal ? std::pair{ez, -ez} : std::pair{ez, ez};
}

HiddenVariableGrid make_grid(GridMode default_mode, std::size_t default_n, const GridOverride& g,
                             bool with_polar_pair) {
  const GridMode mode = g.mode.value_or(default_mode);
  std::size_t n = g.n.value_or(default_n);
  if (!g.n && g.mode && *g.mode != default_mode) {
    n = mode == GridMode::kAntipodal ? 200 : 48;
  }
  HiddenVariableGrid grid =
      mode == GridMode::kAntipodal ? HiddenVariableGrid::antipodal(n) : HiddenVariableGrid::product(n, n);
  return with_polar_pair ? grid.with_pairs({polar_pair(mode)}) : grid;
}

}  // namespace

std::vector<UnitVector3> equatorial_settings() {
  std::vector<UnitVector3> out;
  for (int k = 0; k < 4; ++k) out.push_back(UnitVector3::equatorial(k * std::numbers::pi / 4.0));
  return out;
}

std::vector<UnitVector3> well_spread_settings(std::size_t n) { return fibonacci_grid(n).nodes(); }

Example fully_random(const GridOverride& g) {
  SettingsGrid grid(equatorial_settings(), equatorial_settings());
  return {"fully_random", fully_random_correlation(grid),
          make_grid(GridMode::kIndependentProduct, 8, g, false), "Feasible", "Feasible"};
}

Example singlet_equatorial(const GridOverride& g) {
  SettingsGrid grid(equatorial_settings(), equatorial_settings());
  return {"singlet_equatorial", werner_correlation(1.0, grid),
          make_grid(GridMode::kAntipodal, 200, g, true), "Feasible", "Infeasible"};
}

Example pr_box(const GridOverride& g) {
  return {"pr_box",
          pr_box_correlation(UnitVector3::ex(), UnitVector3::ey(), UnitVector3::ex(),
                             UnitVector3::ey()),
          make_grid(GridMode::kIndependentProduct, 8, g, true), "Feasible", "Infeasible"};
}

Example deterministic(const GridOverride& g) {
  SettingsGrid grid({UnitVector3::ex(), UnitVector3::ey()}, {UnitVector3::ex(), UnitVector3::ey()});
  return {"deterministic", deterministic_correlation(grid),
          make_grid(GridMode::kIndependentProduct, 8, g, false), "InfeasibleExact", "Feasible"};
}

Example werner_well_spread(const GridOverride& g) {
  SettingsGrid grid(well_spread_settings(10), well_spread_settings(10));
  return {"werner_0.99_well_spread", werner_correlation(0.99, grid),
          make_grid(GridMode::kIndependentProduct, 48, g, false), "Infeasible", "Infeasible"};
}

std::vector<Example> classification_examples(const GridOverride& g) {
  std::vector<Example> out;
  out.push_back(fully_random(g));
  out.push_back(singlet_equatorial(g));
  out.push_back(pr_box(g));
  out.push_back(deterministic(g));
  out.push_back(werner_well_spread(g));
  return out;
}

}  // namespace leggett::presets
