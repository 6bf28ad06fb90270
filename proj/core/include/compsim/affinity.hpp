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

#include <Eigen/Dense>

namespace compsim::ap {

/// Affinity-propagation input. The diagonal of `similarity` is ignored and
/// replaced by `preference`.
struct Problem {
  Eigen::MatrixXd similarity;
  Eigen::VectorXd preference;
  double damping = 0.5;
  int max_iterations = 200;
  int stability_window = 10;

  int size() const { return static_cast<int>(similarity.rows()); }
  /// Similarity with the preference written on the diagonal.
  Eigen::MatrixXd effective_similarity() const;
  void validate() const;
};

struct State {
  Eigen::MatrixXd responsibility;
  Eigen::MatrixXd availability;
  int iteration = 0;

  static State zeros(int n);
};

struct Result {
  std::vector<int> exemplars;   // sorted ascending
  std::vector<int> assignment;  // node -> exemplar
  bool converged = false;
  int iterations_run = 0;
  bool provisional = false;  // no node elected itself; fallback exemplar used
};

/// Median of the off-diagonal entries (lower median for even counts
/// averaged with the upper one).
double median_off_diagonal(const Eigen::MatrixXd& similarity);

/// Builds a problem whose preference is the off-diagonal median.
Problem make_problem(Eigen::MatrixXd similarity, double damping = 0.5);

/// R(m,n) = S(m,n) - max_{n' != n} (A(m,n') + S(m,n')), then
/// R <- damping * R_old + (1 - damping) * R_new.
Eigen::MatrixXd update_responsibility(const State& state, const Problem& problem);

/// A(m,n) = min(0, R(n,n) + sum_{m' not in {m,n}} max(0, R(m',n))) for m != n,
/// A(n,n) = sum_{m' != n} max(0, R(m',n)); damped like the responsibilities.
Eigen::MatrixXd update_availability(const State& state, const Problem& problem);

/// Exemplars are the nodes whose own row maximizes A + R on the diagonal;
/// every other node joins the exemplar with the largest similarity.
/// Ties go to the lowest index. With no exemplar yet, the node with the
/// largest A(k,k) + R(k,k) is used.
Result extract(const State& state, const Problem& problem);

/// Runs responsibility and availability updates until the assignment is
/// unchanged for `stability_window` consecutive iterations. Iterations with
/// only a provisional exemplar never count towards stability.
Result cluster(const Problem& problem);

}  // namespace compsim::ap
