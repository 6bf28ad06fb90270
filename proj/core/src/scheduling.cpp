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

#include "compsim/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "compsim/errors.hpp"

namespace compsim {

double EdgeUser::margin_db() const { return linear_to_db(rsrp_best_w / rsrp_second_w); }

int ClusterAssignment::prb_of(int user_id) const {
  for (const auto& [prb, users] : per_prb) {
    for (const auto& u : users) {
      if (u.user_id == user_id) return prb;
    }
  }
  throw LookupError("user " + std::to_string(user_id) + " is not scheduled");
}

const ScheduledUser& ClusterAssignment::find(int user_id) const {
  for (const auto& [prb, users] : per_prb) {
    for (const auto& u : users) {
      if (u.user_id == user_id) return u;
    }
  }
  throw LookupError("user " + std::to_string(user_id) + " is not scheduled");
}

int ClusterAssignment::n_scheduled() const {
  int n = 0;
  for (const auto& [prb, users] : per_prb) n += static_cast<int>(users.size());
  return n;
}

namespace {

bool by_margin(const EdgeUser& a, const EdgeUser& b) {
  const double ma = a.margin_db(), mb = b.margin_db();
  if (ma != mb) return ma < mb;
  return a.user_id < b.user_id;
}

// BS ids ordered by decreasing RSRP at `user`, lowest id first on ties.
std::vector<int> ranked_bs(const ChannelState& channel, int user) {
  std::vector<int> ids(channel.n_bs());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return channel.rsrp(a, user) > channel.rsrp(b, user);
  });
  return ids;
}

}  // namespace

EdgeUserSet select_edge_users(const ChannelState& channel, const Topology& topology,
                              double margin_db, int per_cell) {
  if (!(margin_db > 0.0)) throw DomainError("edge margin must be positive");
  if (channel.n_bs() < 2) return {};

  std::map<int, std::vector<EdgeUser>> by_cell;
  for (const auto& u : topology.users) {
    int best = 0;
    for (int j = 1; j < channel.n_bs(); ++j) {
      if (channel.rsrp(j, u.id) > channel.rsrp(best, u.id)) best = j;
    }
    int second = best == 0 ? 1 : 0;
    for (int j = 0; j < channel.n_bs(); ++j) {
      if (j != best && channel.rsrp(j, u.id) > channel.rsrp(second, u.id)) second = j;
    }
    EdgeUser e{u.id, best, channel.rsrp(best, u.id), channel.rsrp(second, u.id)};
    if (e.margin_db() < margin_db) by_cell[u.home_cell].push_back(e);
  }

  EdgeUserSet out;
  for (auto& [cell, users] : by_cell) {
    std::sort(users.begin(), users.end(), by_margin);
    if (per_cell > 0 && static_cast<int>(users.size()) > per_cell) users.resize(per_cell);
    out.users.insert(out.users.end(), users.begin(), users.end());
  }
  std::sort(out.users.begin(), out.users.end(),
            [](const EdgeUser& a, const EdgeUser& b) { return a.user_id < b.user_id; });
  return out;
}

EdgeUserSet one_per_serving_bs(const EdgeUserSet& edge) {
  std::map<int, EdgeUser> best;
  for (const auto& e : edge.users) {
    auto it = best.find(e.serving_bs);
    if (it == best.end() || by_margin(e, it->second)) best[e.serving_bs] = e;
  }
  EdgeUserSet out;
  for (auto& [bs, e] : best) out.users.push_back(e);
  return out;
}

SimilarityProblem build_similarity(const ChannelState& channel, const EdgeUserSet& edge,
                                   double damping, const double* preference_dbm) {
  const EdgeUserSet reps = one_per_serving_bs(edge);
  if (reps.users.empty()) throw std::invalid_argument("no edge users to schedule");

  SimilarityProblem sp;
  const int n = static_cast<int>(reps.users.size());
  for (const auto& e : reps.users) {
    sp.bs_ids.push_back(e.serving_bs);
    sp.user_ids.push_back(e.user_id);
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (m != k) s(m, k) = watts_to_dbm(channel.rsrp(sp.bs_ids[m], sp.user_ids[k]));
    }
  }
  sp.problem = ap::make_problem(std::move(s), damping);
  if (preference_dbm != nullptr) sp.problem.preference.setConstant(*preference_dbm);
  return sp;
}

ClusterAssignment clusters_from_problem(const ChannelState& channel,
                                        const SimilarityProblem& sp, double p0_w, int n_prb,
                                        ap::Result* ap_result) {
  if (n_prb < 1) throw std::invalid_argument("n_prb must be at least 1");
  const ap::Result res = ap::cluster(sp.problem);

  ClusterAssignment out;
  out.n_prb = n_prb;
  if (!res.converged) {
    out.warnings.push_back("affinity propagation did not converge in " +
                           std::to_string(res.iterations_run) + " iterations");
  }
  int k = 0;
  for (int e : res.exemplars) {
    const int user = sp.user_ids[e];
    ScheduledUser su;
    su.user_id = user;
    su.serving_bs = sp.bs_ids[e];
    su.cbs.push_back(su.serving_bs);
    if (channel.rsrp(su.serving_bs, user) < p0_w) ++out.serving_below_p0;
    int members = 0;
    for (int m = 0; m < sp.problem.size(); ++m) {
      if (m == e || res.assignment[m] != e) continue;
      ++members;
      if (channel.rsrp(sp.bs_ids[m], user) >= p0_w) su.cbs.push_back(sp.bs_ids[m]);
    }
    if (members > 0 && su.cbs.size() == 1) {
      out.warnings.push_back("cluster of BS " + std::to_string(su.serving_bs) +
                             " pruned to its serving BS");
    }
    std::sort(su.cbs.begin(), su.cbs.end());
    out.per_prb[k % n_prb].push_back(std::move(su));
    ++k;
  }
  if (ap_result != nullptr) *ap_result = res;
  return out;
}

ClusterAssignment form_clusters(const ChannelState& channel, const EdgeUserSet& edge,
                                double p0_w, const ApOptions& options) {
  SimilarityProblem sp = build_similarity(channel, edge, options.damping, options.preference_dbm);
  sp.problem.max_iterations = options.max_iterations;
  sp.problem.stability_window = options.stability_window;
  return clusters_from_problem(channel, sp, p0_w, options.n_prb);
}

ClusterAssignment fixed_size_clusters(const ChannelState& channel, const EdgeUserSet& edge,
                                      int size, int n_prb) {
  if (size < 1) throw DomainError("cluster size must be at least 1");
  if (n_prb < 1) throw std::invalid_argument("n_prb must be at least 1");
  ClusterAssignment out;
  out.n_prb = n_prb;
  if (size > channel.n_bs()) {
    out.warnings.push_back("cluster size " + std::to_string(size) + " capped at " +
                           std::to_string(channel.n_bs()) + " BSs");
    size = channel.n_bs();
  }

  std::vector<std::set<int>> busy(n_prb);
  int k = 0;
  for (const auto& e : edge.users) {
    const auto ranked = ranked_bs(channel, e.user_id);
    ScheduledUser su;
    su.user_id = e.user_id;
    su.serving_bs = ranked.front();
    su.cbs.assign(ranked.begin(), ranked.begin() + size);
    std::sort(su.cbs.begin(), su.cbs.end());

    bool placed = false;
    for (int t = 0; t < n_prb && !placed; ++t) {
      const int prb = (k + t) % n_prb;
      const bool free = std::none_of(su.cbs.begin(), su.cbs.end(),
                                     [&](int j) { return busy[prb].count(j) > 0; });
      if (free) {
        busy[prb].insert(su.cbs.begin(), su.cbs.end());
        out.per_prb[prb].push_back(su);
        placed = true;
      }
    }
    if (!placed) {
      out.warnings.push_back("user " + std::to_string(e.user_id) +
                             " left unscheduled: no PRB with a disjoint set");
    }
    ++k;
  }
  return out;
}

std::string check_assignment(const ClusterAssignment& assignment, int n_bs) {
  std::set<int> seen_users;
  for (const auto& [prb, users] : assignment.per_prb) {
    if (prb < 0 || prb >= assignment.n_prb) return "PRB " + std::to_string(prb) + " out of range";
    std::set<int> used;
    for (const auto& u : users) {
      if (!seen_users.insert(u.user_id).second) {
        return "user " + std::to_string(u.user_id) + " scheduled twice";
      }
      if (u.cbs.empty()) return "user " + std::to_string(u.user_id) + " has an empty set";
      for (int j : u.cbs) {
        if (j < 0 || j >= n_bs) return "BS id " + std::to_string(j) + " out of range";
        if (!used.insert(j).second) {
          return "BS " + std::to_string(j) + " serves two users on PRB " + std::to_string(prb);
        }
      }
    }
  }
  return {};
}

}  // namespace compsim
