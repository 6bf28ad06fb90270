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


// Small hand-built scenarios shared by several test binaries.

#pragma once

#include <vector>

#include "compsim/channel.hpp"
#include "compsim/topology.hpp"

namespace fixture {

// One BS per cell at the given positions; user u is homed in home[u] (or
// cell 0 when `home` is empty).
inline compsim::Topology hand_topology(const std::vector<compsim::Point>& bs,
                                       const std::vector<compsim::Point>& users,
                                       const std::vector<int>& home = {},
                                       double p_max_w = 20.0) {
  compsim::Topology t;
  t.cell_radius = 50.0;
  for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
    compsim::CellSite c;
    c.id = i;
    c.position = bs[i];
    c.bs_list.push_back({i, compsim::BsKind::macro, bs[i], p_max_w, i});
    t.cells.push_back(c);
  }
  for (int u = 0; u < static_cast<int>(users.size()); ++u) {
    t.users.push_back({u, users[u], home.empty() ? 0 : home[u]});
  }
  return t;
}

inline compsim::ChannelState channel_of(const compsim::Topology& t) {
  return compsim::compute_channel(t, 5.0, 3e6, 15);
}

// Four BSs on a line 100 m apart; MS1 sits between BS1 and BS2 closer to
// BS2, MS2 between BS3 and BS4 closer to BS3.
inline compsim::Topology two_pair_line() {
  return hand_topology({{0, 0}, {100, 0}, {200, 0}, {300, 0}}, {{70, 0}, {230, 0}}, {1, 2});
}

}  // namespace fixture
