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

#include "compsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "compsim/errors.hpp"

namespace compsim {

double sinr(const ClusterAssignment& assignment, const PowerAllocation& power,
            const ChannelState& channel, int prb, int user_id) {
  const auto it = assignment.per_prb.find(prb);
  const ScheduledUser* su = nullptr;
  if (it != assignment.per_prb.end()) {
    for (const auto& u : it->second) {
      if (u.user_id == user_id) su = &u;
    }
  }
  if (su == nullptr) {
    throw LookupError("user " + std::to_string(user_id) + " is not scheduled on PRB " +
                      std::to_string(prb));
  }
  double signal = 0.0;
  double interference = 0.0;
  for (int j = 0; j < channel.n_bs(); ++j) {
    const double rx = power.watts(prb, j) * channel.gain(j, user_id);
    if (std::binary_search(su->cbs.begin(), su->cbs.end(), j)) {
      signal += rx;
    } else {
      interference += rx;
    }
  }
  return signal / (interference + channel.noise_power_w);
}

double rate(double sinr, double bandwidth_hz, int n_prb) {
  return bandwidth_hz / n_prb * std::log2(1.0 + sinr);
}

double delay(double rate_bps, double file_size_bits) {
  if (rate_bps < 0.0) throw DomainError("delay needs a non-negative rate");
  if (rate_bps == 0.0) return std::numeric_limits<double>::infinity();
  return file_size_bits / rate_bps;
}

double jain(const std::vector<double>& rates) {
  if (rates.empty()) throw DomainError("Jain index of an empty rate list");
  double sum = 0.0, sq = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw DomainError("Jain index needs non-negative rates");
    sum += r;
    sq += r * r;
  }
  if (sq == 0.0) throw DomainError("Jain index is undefined for all-zero rates");
  return std::min(1.0, sum * sum / (static_cast<double>(rates.size()) * sq));
}

MetricsReport evaluate(const ClusterAssignment& assignment, const PowerAllocation& power,
                       const ChannelState& channel, double bandwidth_hz, double file_size_bits) {
  MetricsReport rep;
  for (const auto& [prb, users] : assignment.per_prb) {
    for (const auto& u : users) {
      UserMetrics m;
      m.user_id = u.user_id;
      m.prb = prb;
      m.cbs_size = static_cast<int>(u.cbs.size());
      m.sinr = sinr(assignment, power, channel, prb, u.user_id);
      m.rate_bps = rate(m.sinr, bandwidth_hz, assignment.n_prb);
      m.delay_s = delay(m.rate_bps, file_size_bits);
      rep.per_user.push_back(m);
    }
  }
  std::sort(rep.per_user.begin(), rep.per_user.end(),
            [](const UserMetrics& a, const UserMetrics& b) { return a.user_id < b.user_id; });
  if (rep.per_user.empty()) return rep;

  std::vector<double> rates;
  double delay_sum = 0.0;
  for (const auto& m : rep.per_user) {
    rates.push_back(m.rate_bps);
    rep.sum_edge_throughput_bps += m.rate_bps;
    delay_sum += m.delay_s;
  }
  const auto k = static_cast<double>(rep.per_user.size());
  rep.mean_edge_throughput_bps = rep.sum_edge_throughput_bps / k;
  rep.mean_delay_s = delay_sum / k;
  rep.jain_index = jain(rates);
  return rep;
}

}  // namespace compsim
