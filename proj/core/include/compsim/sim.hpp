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
#include <string>
#include <vector>

#include "compsim/config.hpp"
#include "compsim/metrics.hpp"
#include "compsim/power.hpp"
#include "compsim/scheduling.hpp"
#include "compsim/topology.hpp"

namespace compsim {

/// Everything produced by one drop, kept for export.
struct DropResult {
  int drop_index = 0;
  Topology topology;
  EdgeUserSet edge;
  ClusterAssignment assignment;
  PowerAllocation power;
  std::vector<BargainingRecord> bargains;
  MetricsReport metrics;
};

/// Seed of drop `drop_index` derived from the scenario seed.
std::uint64_t drop_seed(std::uint64_t seed, int drop_index);

/// topology -> channel -> edge users -> clusters -> power -> metrics.
DropResult run_drop_detailed(const ScenarioConfig& config, int drop_index);
MetricsReport run_drop(const ScenarioConfig& config, int drop_index);

/// Runs drops [0, config.n_drops) and returns them in drop order.
std::vector<DropResult> run_drops(const ScenarioConfig& config, int threads = 0);

struct ArmSummary {
  double mean_throughput_bps = 0.0;
  double mean_delay_s = 0.0;
  double jain = 0.0;
  double stderr_bps = 0.0;  // of the per-drop mean throughput
  int n_drops = 0;
};

ArmSummary summarize(const std::vector<MetricsReport>& drops);

enum class SweepAxis { cluster_size, cell_radius, damping };
std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

struct SweepPoint {
  double x = 0.0;
  Algorithm algorithm = Algorithm::ap_comp;
  ArmSummary summary;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::cluster_size;
  std::vector<SweepPoint> points;  // by x, then algorithm
};

/// Every algorithm in `algorithms` runs the same n_drops seeds at every x.
SweepResult run_sweep(const ScenarioConfig& config, SweepAxis axis,
                      const std::vector<double>& values,
                      const std::vector<Algorithm>& algorithms = {Algorithm::ap_comp,
                                                                  Algorithm::common_comp,
                                                                  Algorithm::no_comp},
                      int threads = 0);

/// Applies a sweep coordinate to a config.
ScenarioConfig with_axis(ScenarioConfig config, SweepAxis axis, double x);

}  // namespace compsim
