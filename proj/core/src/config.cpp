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

#include "compsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "compsim/errors.hpp"

namespace compsim {

std::string_view to_string(Deployment d) { return d == Deployment::sa ? "sa" : "nsa"; }

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ap_comp: return "ap_comp";
    case Algorithm::common_comp: return "common_comp";
    case Algorithm::no_comp: return "no_comp";
  }
  return "?";
}

std::string_view to_string(MbConvention c) { return c == MbConvention::binary ? "binary" : "decimal"; }
std::string_view to_string(BackgroundLoad b) { return b == BackgroundLoad::full ? "full" : "none"; }

double ScenarioConfig::p_max_watts() const { return dbm_to_watts(p_max_dbm); }
double ScenarioConfig::p0_watts() const { return dbm_to_watts(p0_dbm); }
double ScenarioConfig::rho0_watts() const { return dbm_to_watts(rho0_dbm); }

double ScenarioConfig::file_size_bits() const {
  const double mb = mb_convention == MbConvention::binary ? 1024.0 * 1024.0 : 1e6;
  return file_size_mb * mb * 8.0;
}

int ScenarioConfig::bs_per_cell() const {
  return deployment == Deployment::sa ? 1 : 1 + small_bs_per_cell;
}

namespace {

bool valid_cell_count(int n) {
  // 1 + 3 r (r + 1) for r rings
  for (int r = 0; r < 64; ++r) {
    const int c = 1 + 3 * r * (r + 1);
    if (c == n) return true;
    if (c > n) return false;
  }
  return false;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  double out = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "expected a number, got '" + s + "'");
  }
  return out;
}

long long parse_int(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  long long out = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "expected an integer, got '" + s + "'");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  std::uint64_t out = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "expected an unsigned integer, got '" + s + "'");
  }
  return out;
}

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!valid_cell_count(n_cells)) {
    throw ConfigError("n_cells", "must be 1, 7, 19, 37, ... (full hexagonal rings), got " +
                                     std::to_string(n_cells));
  }
  if (!(cell_radius_m >= 50.0 && cell_radius_m <= 500.0)) {
    throw ConfigError("cell_radius_m", "must lie in [50, 500] m, got " + fmt_double(cell_radius_m));
  }
  if (users_per_cell < 1) throw ConfigError("users_per_cell", "must be at least 1");
  if (deployment == Deployment::nsa) {
    if (small_bs_per_cell < 1) throw ConfigError("small_bs_per_cell", "must be at least 1 for nsa");
    if (!(macro_small_distance_m > 0.0 && macro_small_distance_m < cell_radius_m)) {
      throw ConfigError("macro_small_distance_m", "must lie in (0, cell_radius_m)");
    }
  }
  if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth_hz", "must be positive");
  if (n_prb < 1) throw ConfigError("n_prb", "must be at least 1");
  if (!std::isfinite(p_max_dbm)) throw ConfigError("p_max_dbm", "must be finite");
  if (!(edge_margin_db > 0.0)) throw ConfigError("edge_margin_db", "must be positive");
  if (cluster_size < 1) throw ConfigError("cluster_size", "must be at least 1");
  if (!(damping >= 0.0 && damping < 1.0)) throw ConfigError("damping", "must lie in [0, 1)");
  if (ap_max_iterations < 1) throw ConfigError("ap_max_iterations", "must be at least 1");
  if (ap_stability_window < 1) throw ConfigError("ap_stability_window", "must be at least 1");
  if (!(file_size_mb > 0.0)) throw ConfigError("file_size_mb", "must be positive");
  if (n_drops < 1) throw ConfigError("n_drops", "must be at least 1");
}

void ScenarioConfig::set(std::string_view key_in, std::string_view value) {
  const std::string key = trim(key_in);
  const std::string v = trim(value);
  if (key == "deployment") {
    if (v == "sa") deployment = Deployment::sa;
    else if (v == "nsa") deployment = Deployment::nsa;
    else throw ConfigError(key, "expected sa or nsa, got '" + v + "'");
  } else if (key == "algorithm") {
    if (v == "ap_comp") algorithm = Algorithm::ap_comp;
    else if (v == "common_comp") algorithm = Algorithm::common_comp;
    else if (v == "no_comp") algorithm = Algorithm::no_comp;
    else throw ConfigError(key, "expected ap_comp, common_comp or no_comp, got '" + v + "'");
  } else if (key == "n_cells") {
    n_cells = static_cast<int>(parse_int(key, v));
  } else if (key == "cell_radius_m") {
    cell_radius_m = parse_double(key, v);
  } else if (key == "users_per_cell") {
    users_per_cell = static_cast<int>(parse_int(key, v));
  } else if (key == "small_bs_per_cell") {
    small_bs_per_cell = static_cast<int>(parse_int(key, v));
  } else if (key == "macro_small_distance_m") {
    macro_small_distance_m = parse_double(key, v);
  } else if (key == "bandwidth_hz") {
    bandwidth_hz = parse_double(key, v);
  } else if (key == "n_prb") {
    n_prb = static_cast<int>(parse_int(key, v));
  } else if (key == "p_max_dbm") {
    p_max_dbm = parse_double(key, v);
  } else if (key == "antenna_gain_db") {
    antenna_gain_db = parse_double(key, v);
  } else if (key == "noise_psd_dbm_hz") {
    noise_psd_dbm_hz = parse_double(key, v);
  } else if (key == "edge_margin_db") {
    edge_margin_db = parse_double(key, v);
  } else if (key == "edge_per_cell") {
    edge_per_cell = static_cast<int>(parse_int(key, v));
  } else if (key == "cluster_size") {
    cluster_size = static_cast<int>(parse_int(key, v));
  } else if (key == "p0_dbm") {
    p0_dbm = parse_double(key, v);
  } else if (key == "background_load") {
    if (v == "full") background = BackgroundLoad::full;
    else if (v == "none") background = BackgroundLoad::none;
    else throw ConfigError(key, "expected full or none, got '" + v + "'");
  } else if (key == "damping") {
    damping = parse_double(key, v);
  } else if (key == "ap_max_iterations") {
    ap_max_iterations = static_cast<int>(parse_int(key, v));
  } else if (key == "ap_stability_window") {
    ap_stability_window = static_cast<int>(parse_int(key, v));
  } else if (key == "preference") {
    if (v == "median") {
      preference_median = true;
    } else {
      preference_median = false;
      preference_dbm = parse_double(key, v);
    }
  } else if (key == "rho0_dbm") {
    rho0_dbm = parse_double(key, v);
  } else if (key == "file_size_mb") {
    file_size_mb = parse_double(key, v);
  } else if (key == "mb_convention") {
    if (v == "binary") mb_convention = MbConvention::binary;
    else if (v == "decimal") mb_convention = MbConvention::decimal;
    else throw ConfigError(key, "expected binary or decimal, got '" + v + "'");
  } else if (key == "n_drops") {
    n_drops = static_cast<int>(parse_int(key, v));
  } else if (key == "seed") {
    seed = parse_u64(key, v);
  } else {
    throw ConfigError(key, "unknown config key");
  }
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::entries() const {
  return {
      {"deployment", std::string(to_string(deployment))},
      {"algorithm", std::string(to_string(algorithm))},
      {"n_cells", std::to_string(n_cells)},
      {"cell_radius_m", fmt_double(cell_radius_m)},
      {"users_per_cell", std::to_string(users_per_cell)},
      {"small_bs_per_cell", std::to_string(small_bs_per_cell)},
      {"macro_small_distance_m", fmt_double(macro_small_distance_m)},
      {"bandwidth_hz", fmt_double(bandwidth_hz)},
      {"n_prb", std::to_string(n_prb)},
      {"p_max_dbm", fmt_double(p_max_dbm)},
      {"antenna_gain_db", fmt_double(antenna_gain_db)},
      {"noise_psd_dbm_hz", fmt_double(noise_psd_dbm_hz)},
      {"edge_margin_db", fmt_double(edge_margin_db)},
      {"edge_per_cell", std::to_string(edge_per_cell)},
      {"cluster_size", std::to_string(cluster_size)},
      {"p0_dbm", fmt_double(p0_dbm)},
      {"background_load", std::string(to_string(background))},
      {"damping", fmt_double(damping)},
      {"ap_max_iterations", std::to_string(ap_max_iterations)},
      {"ap_stability_window", std::to_string(ap_stability_window)},
      {"preference", preference_median ? std::string("median") : fmt_double(preference_dbm)},
      {"rho0_dbm", fmt_double(rho0_dbm)},
      {"file_size_mb", fmt_double(file_size_mb)},
      {"mb_convention", std::string(to_string(mb_convention))},
      {"n_drops", std::to_string(n_drops)},
      {"seed", std::to_string(seed)},
  };
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (auto& [key, _] : ScenarioConfig{}.entries()) k.push_back(key);
    return k;
  }();
  return keys;
}

ScenarioConfig parse_config(std::string_view text, std::string_view origin) {
  ScenarioConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno),
                        "expected 'key = value', got '" + t + "'");
    }
    config.set(t.substr(0, eq), t.substr(eq + 1));
  }
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace compsim
