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

#include "compsim/io.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "compsim/errors.hpp"

namespace compsim::io {

using nlohmann::json;

namespace {

// Seventeen significant digits round-trip any double, so identical runs
// give identical bytes.
std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void write_metrics_csv(std::ostream& out, Algorithm algorithm,
                       const std::vector<DropResult>& drops) {
  out << "drop,algorithm,user_id,prb,cbs_size,sinr,rate_bps,delay_s\n";
  for (const auto& d : drops) {
    for (const auto& m : d.metrics.per_user) {
      out << d.drop_index << ',' << to_string(algorithm) << ',' << m.user_id << ',' << m.prb
          << ',' << m.cbs_size << ',' << num(m.sinr) << ',' << num(m.rate_bps) << ','
          << num(m.delay_s) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "axis,x,algorithm,mean_throughput_bps,mean_delay_s,jain,stderr,n_drops\n";
  for (const auto& p : sweep.points) {
    out << to_string(sweep.axis) << ',' << num(p.x) << ',' << to_string(p.algorithm) << ','
        << num(p.summary.mean_throughput_bps) << ',' << num(p.summary.mean_delay_s) << ','
        << num(p.summary.jain) << ',' << num(p.summary.stderr_bps) << ',' << p.summary.n_drops
        << '\n';
  }
}

void write_power_csv(std::ostream& out, const std::vector<DropResult>& drops) {
  out << "drop,prb,bs_id,watts,dbm\n";
  for (const auto& d : drops) {
    for (int b = 0; b < d.power.n_prb(); ++b) {
      for (int j = 0; j < d.power.n_bs(); ++j) {
        const double w = d.power.watts(b, j);
        if (w <= 0.0) continue;
        out << d.drop_index << ',' << b << ',' << j << ',' << num(w) << ','
            << num(watts_to_dbm(w)) << '\n';
      }
    }
  }
}

std::string clusters_json(const DropResult& drop, int indent) {
  json j;
  j["drop"] = drop.drop_index;
  j["cell_radius_m"] = drop.topology.cell_radius;
  json bs = json::array();
  for (const auto& b : drop.topology.all_bs()) {
    bs.push_back({{"bs_id", b.bs_id},
                  {"cell_id", b.cell_id},
                  {"kind", b.kind == BsKind::macro ? "macro" : "small"},
                  {"x", b.position.x},
                  {"y", b.position.y}});
  }
  j["base_stations"] = std::move(bs);

  json users = json::array();
  for (const auto& e : drop.edge.users) {
    const auto& u = drop.topology.users.at(e.user_id);
    users.push_back({{"user_id", e.user_id},
                     {"serving_bs", e.serving_bs},
                     {"x", u.position.x},
                     {"y", u.position.y}});
  }
  j["edge_users"] = std::move(users);

  json clusters = json::array();
  for (const auto& [prb, list] : drop.assignment.per_prb) {
    for (const auto& su : list) {
      clusters.push_back({{"user_id", su.user_id},
                          {"bs_ids", su.cbs},
                          {"serving_bs", su.serving_bs},
                          {"prb", prb}});
    }
  }
  j["clusters"] = std::move(clusters);
  j["warnings"] = drop.assignment.warnings;
  return j.dump(indent);
}

std::string metrics_json(const MetricsReport& report, int indent) {
  json j;
  json users = json::array();
  for (const auto& m : report.per_user) {
    users.push_back({{"user_id", m.user_id},
                     {"prb", m.prb},
                     {"cbs_size", m.cbs_size},
                     {"sinr", m.sinr},
                     {"rate_bps", m.rate_bps},
                     {"delay_s", std::isfinite(m.delay_s) ? json(m.delay_s) : json("inf")}});
  }
  j["per_user"] = std::move(users);
  j["sum_edge_throughput_bps"] = report.sum_edge_throughput_bps;
  j["mean_edge_throughput_bps"] = report.mean_edge_throughput_bps;
  j["mean_delay_s"] = report.mean_delay_s;
  j["jain_index"] = report.jain_index;
  return j.dump(indent);
}

std::string resolved_config_json(const ScenarioConfig& config, int indent) {
  json j = json::object();
  for (const auto& [k, v] : config.entries()) j[k] = v;
  // derived values, for readers that do not want to redo the conversions
  j["derived"] = {{"p_max_w", config.p_max_watts()},
                  {"p0_w", config.p0_watts()},
                  {"rho0_w", config.rho0_watts()},
                  {"file_size_bits", config.file_size_bits()},
                  {"bs_per_cell", config.bs_per_cell()},
                  {"prb_bandwidth_hz", config.bandwidth_hz / config.n_prb}};
  return j.dump(indent);
}

}  // namespace compsim::io
