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

#include <Eigen/Dense>

#include "compsim/topology.hpp"

namespace compsim {

/// Link gains and RSRPs, rows indexed by BS id, columns by user id.
struct ChannelState {
  Eigen::MatrixXd gain;  // linear, dimensionless
  Eigen::MatrixXd rsrp;  // watts at each BS's max power
  double noise_power_w = 0.0;  // per PRB

  int n_bs() const { return static_cast<int>(gain.rows()); }
  int n_users() const { return static_cast<int>(gain.cols()); }
};

/// 148.1 + 37.6 log10(d / 1 km). Throws DomainError for d < 1 m.
double path_loss_db(double distance_m);

/// Thermal noise over one PRB of width bandwidth/n_prb, in watts.
double prb_noise_power_w(double noise_psd_dbm_hz, double bandwidth_hz, int n_prb);

/// Distances below 1 m are floored to 1 m. Antenna gain is applied once
/// per link.
ChannelState compute_channel(const Topology& topology, double antenna_gain_db,
                             double bandwidth_hz, int n_prb,
                             double noise_psd_dbm_hz = -174.0);

}  // namespace compsim
