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


// Micro-benchmarks for the hot paths of one Monte-Carlo drop.

#include <benchmark/benchmark.h>

#include <random>

#include "compsim/affinity.hpp"
#include "compsim/channel.hpp"
#include "compsim/config.hpp"
#include "compsim/errors.hpp"
#include "compsim/power.hpp"
#include "compsim/sim.hpp"
#include "compsim/topology.hpp"

namespace {

using namespace compsim;

// Random negative-squared-distance similarities over n planar points.
Eigen::MatrixXd random_similarity(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) pts.row(i) << u(rng), u(rng);
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i, j) = -(pts.row(i) - pts.row(j)).squaredNorm();
  }
  return s;
}

void BM_AffinityCluster(benchmark::State& state) {
  const ap::Problem p = ap::make_problem(random_similarity(static_cast<int>(state.range(0))), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ap::cluster(p));
}
BENCHMARK(BM_AffinityCluster)->Arg(19)->Arg(57)->Arg(133);

void BM_ComputeChannel(benchmark::State& state) {
  ScenarioConfig c;
  c.deployment = state.range(0) ? Deployment::nsa : Deployment::sa;
  c.cell_radius_m = state.range(0) ? 200.0 : 50.0;
  const Topology t = build_topology(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_channel(t, c.antenna_gain_db, c.bandwidth_hz, c.n_prb));
  }
}
BENCHMARK(BM_ComputeChannel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RunDrop(benchmark::State& state) {
  ScenarioConfig c;
  c.algorithm = static_cast<Algorithm>(state.range(0));
  int drop = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_drop(c, drop++));
}
BENCHMARK(BM_RunDrop)
    ->Arg(static_cast<int>(Algorithm::ap_comp))
    ->Arg(static_cast<int>(Algorithm::common_comp))
    ->Arg(static_cast<int>(Algorithm::no_comp))
    ->Unit(benchmark::kMillisecond);

void BM_GridOracle(benchmark::State& state) {
  TwoUserInstance inst;
  inst.n = 2;
  inst.g1 = 3e-10;
  inst.g2 = 2e-10;
  inst.g3 = 4e-11;
  inst.g4 = 5e-11;
  inst.sigma2 = dbm_to_watts(-121.0);
  inst.p_max = dbm_to_watts(43.0) / 15.0;
  inst.p0 = 1e-17;
  inst.type1 = UserType::high();
  inst.type2 = UserType::low();
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle(inst, grid));
}
BENCHMARK(BM_GridOracle)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
