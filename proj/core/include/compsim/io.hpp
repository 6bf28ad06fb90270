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

#include <iosfwd>
#include <string>
#include <vector>

#include "compsim/config.hpp"
#include "compsim/sim.hpp"

namespace compsim::io {

/// Columns: drop,algorithm,user_id,prb,cbs_size,sinr,rate_bps,delay_s
void write_metrics_csv(std::ostream& out, Algorithm algorithm,
                       const std::vector<DropResult>& drops);

/// Columns: axis,x,algorithm,mean_throughput_bps,mean_delay_s,jain,stderr,n_drops
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

/// Columns: drop,prb,bs_id,watts,dbm (zero-power entries are skipped)
void write_power_csv(std::ostream& out, const std::vector<DropResult>& drops);

/// Base stations, edge users and clusters of one drop.
std::string clusters_json(const DropResult& drop, int indent = 2);

std::string metrics_json(const MetricsReport& report, int indent = 2);

/// Every config field with its resolved value.
std::string resolved_config_json(const ScenarioConfig& config, int indent = 2);

}  // namespace compsim::io
