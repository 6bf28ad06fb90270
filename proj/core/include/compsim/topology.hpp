// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The compsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "compsim/config.hpp"

namespace compsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

enum class BsKind { macro, small };

struct BaseStation {
  int bs_id = 0;
  BsKind kind = BsKind::macro;
  Point position;
  double max_power_w = 0.0;
  int cell_id = 0;
};

struct CellSite {
  int id = 0;
  Point position;
  std::vector<BaseStation> bs_list;
};

struct UserSite {
  int id = 0;
  Point position;
  int home_cell = 0;
};

/// Immutable drop geometry. BS ids are global and contiguous, starting at 0
/// in cell order, so they double as row indices of the channel matrices.
struct Topology {
  std::vector<CellSite> cells;
  std::vector<UserSite> users;
  double cell_radius = 0.0;
  std::uint64_t seed = 0;

  int n_bs() const;
  const BaseStation& bs(int bs_id) const;
  std::vector<BaseStation> all_bs() const;
};

/// Axial hex coordinates of the cells, center first then ring by ring.
std::vector<Point> hex_cell_centers(int n_cells, double cell_radius);

/// True if `p` lies inside the flat-top hexagon of circumradius `radius`
/// centered at `center`.
bool in_hexagon(Point p, Point center, double radius);

/// Builds the cell layout and drops users uniformly inside each hexagon.
/// Deterministic in `seed`.
Topology build_topology(const ScenarioConfig& config, std::uint64_t seed);
inline Topology build_topology(const ScenarioConfig& config) {
  return build_topology(config, config.seed);
}

}  // namespace compsim
