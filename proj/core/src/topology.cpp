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

#include "compsim/topology.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "compsim/errors.hpp"

namespace compsim {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

int Topology::n_bs() const {
  int n = 0;
  for (const auto& c : cells) n += static_cast<int>(c.bs_list.size());
  return n;
}

const BaseStation& Topology::bs(int bs_id) const {
  for (const auto& c : cells) {
    for (const auto& b : c.bs_list) {
      if (b.bs_id == bs_id) return b;
    }
  }
  throw LookupError("no base station with id " + std::to_string(bs_id));
}

std::vector<BaseStation> Topology::all_bs() const {
  std::vector<BaseStation> out;
  for (const auto& c : cells) out.insert(out.end(), c.bs_list.begin(), c.bs_list.end());
  return out;
}

std::vector<Point> hex_cell_centers(int n_cells, double cell_radius) {
  // Flat-top hexagons: axial (q, r) maps to x = 1.5 R q, y = sqrt3 R (r + q/2).
  std::vector<Point> out;
  const double s3 = std::numbers::sqrt3;
  auto push = [&](int q, int r) {
    out.push_back({1.5 * cell_radius * q, s3 * cell_radius * (r + 0.5 * q)});
  };
  push(0, 0);
  static constexpr int dirs[6][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};
  for (int ring = 1; static_cast<int>(out.size()) < n_cells; ++ring) {
    int q = -ring, r = ring;  // start at direction 4 scaled by ring
    for (int side = 0; side < 6; ++side) {
      for (int step = 0; step < ring; ++step) {
        push(q, r);
        q += dirs[side][0];
        r += dirs[side][1];
      }
    }
  }
  out.resize(n_cells);
  return out;
}

bool in_hexagon(Point p, Point center, double radius) {
  const double dx = std::abs(p.x - center.x);
  const double dy = std::abs(p.y - center.y);
  const double s3 = std::numbers::sqrt3;
  return dy <= 0.5 * s3 * radius && s3 * dx + dy <= s3 * radius;
}

Topology build_topology(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();

  Topology topo;
  topo.cell_radius = config.cell_radius_m;
  topo.seed = seed;

  const double p_max = config.p_max_watts();
  const auto centers = hex_cell_centers(config.n_cells, config.cell_radius_m);
  int next_bs = 0;
  for (int c = 0; c < config.n_cells; ++c) {
    CellSite cell;
    cell.id = c;
    cell.position = centers[c];
    cell.bs_list.push_back({next_bs++, BsKind::macro, centers[c], p_max, c});
    if (config.deployment == Deployment::nsa) {
      const int k = config.small_bs_per_cell;
      for (int i = 0; i < k; ++i) {
        const double a = 2.0 * std::numbers::pi * i / k;
        const Point pos{centers[c].x + config.macro_small_distance_m * std::cos(a),
                        centers[c].y + config.macro_small_distance_m * std::sin(a)};
        cell.bs_list.push_back({next_bs++, BsKind::small, pos, p_max, c});
      }
    }
    topo.cells.push_back(std::move(cell));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-config.cell_radius_m, config.cell_radius_m);
  const double half_h = 0.5 * std::numbers::sqrt3 * config.cell_radius_m;
  std::uniform_real_distribution<double> uy(-half_h, half_h);
  int next_user = 0;
  for (const auto& cell : topo.cells) {
    for (int u = 0; u < config.users_per_cell; ++u) {
      Point p;
      do {
        p = {cell.position.x + ux(rng), cell.position.y + uy(rng)};
      } while (!in_hexagon(p, cell.position, config.cell_radius_m));
      topo.users.push_back({next_user++, p, cell.id});
    }
  }
  return topo;
}

}  // namespace compsim
