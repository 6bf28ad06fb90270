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

#include "compsim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "compsim/channel.hpp"
#include "compsim/errors.hpp"

namespace compsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t drop_seed(std::uint64_t seed, int drop_index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(drop_index));
}

DropResult run_drop_detailed(const ScenarioConfig& config, int drop_index) {
  config.validate();
  DropResult out;
  out.drop_index = drop_index;
  out.topology = build_topology(config, drop_seed(config.seed, drop_index));
  const ChannelState channel = compute_channel(out.topology, config.antenna_gain_db,
                                               config.bandwidth_hz, config.n_prb,
                                               config.noise_psd_dbm_hz);

  const int per_cell = config.edge_per_cell > 0 ? config.edge_per_cell : config.bs_per_cell();
  out.edge = one_per_serving_bs(
      select_edge_users(channel, out.topology, config.edge_margin_db, per_cell));

  const double p_max = config.p_max_watts();
  switch (config.algorithm) {
    case Algorithm::ap_comp: {
      ApOptions ap;
      ap.n_prb = config.n_prb;
      ap.damping = config.damping;
      ap.max_iterations = config.ap_max_iterations;
      ap.stability_window = config.ap_stability_window;
      ap.preference_dbm = config.preference_median ? nullptr : &config.preference_dbm;
      out.assignment = form_clusters(channel, out.edge, config.p0_watts(), ap);

      NbsOptions nbs;
      nbs.p_max = p_max;
      nbs.p0 = config.p0_watts();
      nbs.rho0 = config.rho0_watts();
      nbs.bandwidth_hz = config.bandwidth_hz;
      nbs.file_size_bits = config.file_size_bits();
      nbs.load = config.background;
      NbsAllocation alloc = nbs_power(out.assignment, channel, nbs);
      out.power = std::move(alloc.power);
      out.bargains = std::move(alloc.bargains);
      break;
    }
    case Algorithm::common_comp:
    case Algorithm::no_comp: {
      const int size = config.algorithm == Algorithm::no_comp ? 1 : config.cluster_size;
      out.assignment = fixed_size_clusters(channel, out.edge, size, config.n_prb);
      out.power = multi_user_power(out.assignment, channel.n_bs(), p_max, config.background);
      break;
    }
  }

  out.metrics = evaluate(out.assignment, out.power, channel, config.bandwidth_hz,
                         config.file_size_bits());
  return out;
}

MetricsReport run_drop(const ScenarioConfig& config, int drop_index) {
  return run_drop_detailed(config, drop_index).metrics;
}

std::vector<DropResult> run_drops(const ScenarioConfig& config, int threads) {
  config.validate();
  const int n = config.n_drops;
  std::vector<DropResult> out(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](int i) {
    try {
      out[i] = run_drop_detailed(config, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) work(i);
      });
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("drop " + std::to_string(i) + " (" +
                               std::string(to_string(config.algorithm)) + ", seed " +
                               std::to_string(config.seed) + ") failed: " + e.what());
    }
  }
  return out;
}

ArmSummary summarize(const std::vector<MetricsReport>& drops) {
  ArmSummary s;
  s.n_drops = static_cast<int>(drops.size());
  if (drops.empty()) return s;
  for (const auto& d : drops) {
    s.mean_throughput_bps += d.mean_edge_throughput_bps;
    s.mean_delay_s += d.mean_delay_s;
    s.jain += d.jain_index;
  }
  const double n = s.n_drops;
  s.mean_throughput_bps /= n;
  s.mean_delay_s /= n;
  s.jain /= n;
  if (s.n_drops > 1) {
    double ss = 0.0;
    for (const auto& d : drops) {
      const double e = d.mean_edge_throughput_bps - s.mean_throughput_bps;
      ss += e * e;
    }
    s.stderr_bps = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::cluster_size: return "cluster_size";
    case SweepAxis::cell_radius: return "cell_radius";
    case SweepAxis::damping: return "damping";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view text) {
  if (text == "cluster_size") return SweepAxis::cluster_size;
  if (text == "cell_radius") return SweepAxis::cell_radius;
  if (text == "damping") return SweepAxis::damping;
  throw ConfigError("axis", "expected cluster_size, cell_radius or damping, got '" +
                                std::string(text) + "'");
}

ScenarioConfig with_axis(ScenarioConfig config, SweepAxis axis, double x) {
  switch (axis) {
    case SweepAxis::cluster_size: config.cluster_size = static_cast<int>(std::lround(x)); break;
    case SweepAxis::cell_radius: config.cell_radius_m = x; break;
    case SweepAxis::damping: config.damping = x; break;
  }
  return config;
}

SweepResult run_sweep(const ScenarioConfig& config, SweepAxis axis,
                      const std::vector<double>& values,
                      const std::vector<Algorithm>& algorithms, int threads) {
  if (values.empty()) throw ConfigError("values", "a sweep needs at least one value");
  std::vector<double> xs = values;
  std::sort(xs.begin(), xs.end());

  SweepResult out;
  out.axis = axis;
  for (double x : xs) {
    for (Algorithm alg : algorithms) {
      ScenarioConfig c = with_axis(config, axis, x);
      c.algorithm = alg;
      std::vector<MetricsReport> reports;
      for (auto& d : run_drops(c, threads)) reports.push_back(std::move(d.metrics));
      out.points.push_back({x, alg, summarize(reports)});
    }
  }
  return out;
}

}  // namespace compsim
