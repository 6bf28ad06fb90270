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

#include "compsim/affinity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "compsim/errors.hpp"

namespace compsim::ap {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Eigen::MatrixXd Problem::effective_similarity() const {
  Eigen::MatrixXd s = similarity;
  s.diagonal() = preference;
  return s;
}

void Problem::validate() const {
  const int n = size();
  if (similarity.cols() != n || preference.size() != n) {
    throw std::invalid_argument("affinity problem: similarity must be n x n and preference n");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !std::isfinite(similarity(i, j))) {
        throw std::invalid_argument("affinity problem: similarity must be finite");
      }
    }
    if (!std::isfinite(preference(i))) {
      throw std::invalid_argument("affinity problem: preference must be finite");
    }
  }
  if (!(damping >= 0.0 && damping < 1.0)) {
    throw std::invalid_argument("affinity problem: damping must lie in [0, 1)");
  }
  if (stability_window < 1) throw std::invalid_argument("affinity problem: stability_window < 1");
  if (max_iterations < 1) throw std::invalid_argument("affinity problem: max_iterations < 1");
}

State State::zeros(int n) {
  return {Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), 0};
}

double median_off_diagonal(const Eigen::MatrixXd& s) {
  std::vector<double> v;
  const auto n = s.rows();
  v.reserve(static_cast<std::size_t>(n * (n - 1)));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) v.push_back(s(i, j));
    }
  }
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Problem make_problem(Eigen::MatrixXd similarity, double damping) {
  Problem p;
  const auto n = similarity.rows();
  const double pref = median_off_diagonal(similarity);
  p.similarity = std::move(similarity);
  p.preference = Eigen::VectorXd::Constant(n, pref);
  p.damping = damping;
  return p;
}

Eigen::MatrixXd update_responsibility(const State& state, const Problem& problem) {
  const int n = problem.size();
  const Eigen::MatrixXd s = problem.effective_similarity();
  Eigen::MatrixXd out(n, n);
  for (int m = 0; m < n; ++m) {
    // The largest and second-largest A + S in the row cover every "max over
    // n' != n" in one pass.
    double best = kNegInf, second = kNegInf;
    int best_idx = -1;
    for (int k = 0; k < n; ++k) {
      const double v = state.availability(m, k) + s(m, k);
      if (v > best) {
        second = best;
        best = v;
        best_idx = k;
      } else if (v > second) {
        second = v;
      }
    }
    for (int k = 0; k < n; ++k) {
      const double competitor = (k == best_idx) ? second : best;
      const double fresh = n == 1 ? s(m, k) : s(m, k) - competitor;
      out(m, k) = problem.damping * state.responsibility(m, k) + (1.0 - problem.damping) * fresh;
    }
  }
  return out;
}

Eigen::MatrixXd update_availability(const State& state, const Problem& problem) {
  const int n = problem.size();
  const Eigen::MatrixXd& r = state.responsibility;
  Eigen::MatrixXd out(n, n);
  for (int k = 0; k < n; ++k) {
    double positive_sum = 0.0;  // sum over m' != k of max(0, R(m', k))
    for (int m = 0; m < n; ++m) {
      if (m != k) positive_sum += std::max(0.0, r(m, k));
    }
    for (int m = 0; m < n; ++m) {
      double fresh;
      if (m == k) {
        fresh = positive_sum;
      } else {
        fresh = std::min(0.0, r(k, k) + positive_sum - std::max(0.0, r(m, k)));
      }
      out(m, k) = problem.damping * state.availability(m, k) + (1.0 - problem.damping) * fresh;
    }
  }
  return out;
}

Result extract(const State& state, const Problem& problem) {
  const int n = problem.size();
  const Eigen::MatrixXd evidence = state.availability + state.responsibility;
  Result res;
  res.provisional = false;
  for (int m = 0; m < n; ++m) {
    int arg = 0;
    for (int k = 1; k < n; ++k) {
      if (evidence(m, k) > evidence(m, arg)) arg = k;
    }
    if (arg == m) res.exemplars.push_back(m);
  }
  if (res.exemplars.empty() && n > 0) {
    res.provisional = true;
    int arg = 0;
    for (int k = 1; k < n; ++k) {
      if (evidence(k, k) > evidence(arg, arg)) arg = k;
    }
    res.exemplars.push_back(arg);
  }
  res.assignment.assign(n, -1);
  for (int e : res.exemplars) res.assignment[e] = e;
  for (int m = 0; m < n; ++m) {
    if (res.assignment[m] >= 0) continue;
    int best = res.exemplars.front();
    for (int e : res.exemplars) {
      if (problem.similarity(m, e) > problem.similarity(m, best)) best = e;
    }
    res.assignment[m] = best;
  }
  return res;
}

Result cluster(const Problem& problem) {
  problem.validate();
  const int n = problem.size();
  State state = State::zeros(n);
  Result current;
  int stable = 0;
  for (int it = 1; it <= problem.max_iterations; ++it) {
    state.responsibility = update_responsibility(state, problem);
    state.availability = update_availability(state, problem);
    state.iteration = it;

    Result next = extract(state, problem);
    if (next.provisional) {
      stable = 0;
    } else if (it > 1 && !current.provisional && next.assignment == current.assignment) {
      ++stable;
    } else {
      stable = 0;
    }
    current = std::move(next);
    current.iterations_run = it;
    if (stable >= problem.stability_window) {
      current.converged = true;
      break;
    }
  }
  return current;
}

}  // namespace compsim::ap
