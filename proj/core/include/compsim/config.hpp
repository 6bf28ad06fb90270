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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace compsim {

enum class Deployment { sa, nsa };
enum class Algorithm { ap_comp, common_comp, no_comp };
enum class MbConvention { binary, decimal };
enum class BackgroundLoad { full, none };

std::string_view to_string(Deployment d);
std::string_view to_string(Algorithm a);
std::string_view to_string(MbConvention c);
std::string_view to_string(BackgroundLoad b);

/// Every knob of one simulated scenario. Defaults reproduce the reference
/// link budget: 19 cells, 3 MHz over 15 PRBs, 43 dBm per BS, 5 dB antenna
/// gain, -174 dBm/Hz noise, 100 users per cell, 100 MB video files.
struct ScenarioConfig {
  Deployment deployment = Deployment::sa;
  Algorithm algorithm = Algorithm::ap_comp;

  // topology
  int n_cells = 19;
  double cell_radius_m = 50.0;
  int users_per_cell = 100;
  int small_bs_per_cell = 6;
  double macro_small_distance_m = 50.0;

  // link budget
  double bandwidth_hz = 3e6;
  int n_prb = 15;
  double p_max_dbm = 43.0;
  double antenna_gain_db = 5.0;
  double noise_psd_dbm_hz = -174.0;

  // scheduling
  double edge_margin_db = 6.0;
  int edge_per_cell = 0;  // 0: one candidate per BS in the cell
  int cluster_size = 3;   // common_comp only
  double p0_dbm = -110.0;
  BackgroundLoad background = BackgroundLoad::full;

  // affinity propagation
  double damping = 0.5;
  int ap_max_iterations = 200;
  int ap_stability_window = 10;
  bool preference_median = true;
  double preference_dbm = 0.0;  // used when preference_median is false

  // power control
  double rho0_dbm = -60.0;

  // metrics
  double file_size_mb = 100.0;
  MbConvention mb_convention = MbConvention::binary;

  // Monte-Carlo
  int n_drops = 20;
  std::uint64_t seed = 1;

  double p_max_watts() const;
  double p0_watts() const;
  double rho0_watts() const;
  double file_size_bits() const;
  int bs_per_cell() const;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  /// Applies one `key = value` setting. Throws ConfigError on an unknown
  /// key or an unparsable value.
  void set(std::string_view key, std::string_view value);

  /// Flat key/value view of every field, in declaration order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Reads a key/value config file (`key = value`, `#` comments, blank lines
/// ignored) on top of the defaults.
ScenarioConfig load_config(const std::string& path);

/// Parses config text; `origin` is used in error messages.
ScenarioConfig parse_config(std::string_view text, std::string_view origin = "<string>");

/// Every key accepted by ScenarioConfig::set.
const std::vector<std::string>& config_keys();

}  // namespace compsim
