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

#include <vector>

#include "compsim/channel.hpp"
#include "compsim/power.hpp"
#include "compsim/scheduling.hpp"

namespace compsim {

struct UserMetrics {
  int user_id = 0;
  int prb = 0;
  int cbs_size = 0;
  double sinr = 0.0;
  double rate_bps = 0.0;
  double delay_s = 0.0;  // +inf when the rate is zero
};

struct MetricsReport {
  std::vector<UserMetrics> per_user;  // ordered by user id
  double sum_edge_throughput_bps = 0.0;
  double mean_edge_throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  double jain_index = 0.0;
};

/// Cooperating-set power over out-of-set power plus noise on PRB `prb`.
/// Throws LookupError if the user is not scheduled on that PRB.
double sinr(const ClusterAssignment& assignment, const PowerAllocation& power,
            const ChannelState& channel, int prb, int user_id);

/// (B / R) log2(1 + sinr).
double rate(double sinr, double bandwidth_hz, int n_prb);

/// file_size / rate; +inf for a zero rate. Throws DomainError for a
/// negative rate.
double delay(double rate_bps, double file_size_bits);

/// (sum r)^2 / (K sum r^2). Throws DomainError for an empty list, a
/// negative rate, or all-zero rates.
double jain(const std::vector<double>& rates);

MetricsReport evaluate(const ClusterAssignment& assignment, const PowerAllocation& power,
                       const ChannelState& channel, double bandwidth_hz, double file_size_bits);

}  // namespace compsim
