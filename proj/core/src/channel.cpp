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

#include "compsim/channel.hpp"

#include <algorithm>
#include <cmath>

#include "compsim/errors.hpp"

namespace compsim {

double path_loss_db(double distance_m) {
  if (!(distance_m >= 1.0)) {
    throw DomainError("path loss needs a distance of at least 1 m, got " +
                      std::to_string(distance_m));
  }
  return 148.1 + 37.6 * std::log10(distance_m / 1000.0);
}

double prb_noise_power_w(double noise_psd_dbm_hz, double bandwidth_hz, int n_prb) {
  return dbm_to_watts(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz / n_prb));
}

ChannelState compute_channel(const Topology& topology, double antenna_gain_db,
                             double bandwidth_hz, int n_prb, double noise_psd_dbm_hz) {
  const auto stations = topology.all_bs();
  const int n_bs = static_cast<int>(stations.size());
  const int n_users = static_cast<int>(topology.users.size());

  ChannelState ch;
  ch.gain.resize(n_bs, n_users);
  ch.rsrp.resize(n_bs, n_users);
  for (const auto& bs : stations) {
    for (const auto& u : topology.users) {
      const double d = std::max(1.0, distance(bs.position, u.position));
      const double g = db_to_linear(antenna_gain_db - path_loss_db(d));
      ch.gain(bs.bs_id, u.id) = g;
      ch.rsrp(bs.bs_id, u.id) = bs.max_power_w * g;
    }
  }
  ch.noise_power_w = prb_noise_power_w(noise_psd_dbm_hz, bandwidth_hz, n_prb);
  return ch;
}

}  // namespace compsim
