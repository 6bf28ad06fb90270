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

#include <map>
#include <string>
#include <vector>

#include "compsim/affinity.hpp"
#include "compsim/channel.hpp"
#include "compsim/topology.hpp"

namespace compsim {

struct EdgeUser {
  int user_id = 0;
  int serving_bs = 0;
  double rsrp_best_w = 0.0;
  double rsrp_second_w = 0.0;

  double margin_db() const;
};

struct EdgeUserSet {
  std::vector<EdgeUser> users;
};

/// One scheduled user and the BSs jointly transmitting to it.
struct ScheduledUser {
  int user_id = 0;
  std::vector<int> cbs;  // sorted bs ids; front() is not special
  int serving_bs = 0;
};

struct ClusterAssignment {
  int n_prb = 0;
  std::map<int, std::vector<ScheduledUser>> per_prb;
  std::vector<std::string> warnings;
  int serving_below_p0 = 0;  // serving BSs kept despite RSRP < p0

  /// PRB of a user, or throws LookupError.
  int prb_of(int user_id) const;
  const ScheduledUser& find(int user_id) const;
  int n_scheduled() const;
};

/// Best and second-best RSRP margin per user; users under `margin_db` are
/// edge users. Each cell keeps its `per_cell` smallest-margin edge users
/// (ties: lowest user id). `per_cell` <= 0 keeps all of them.
EdgeUserSet select_edge_users(const ChannelState& channel, const Topology& topology,
                              double margin_db, int per_cell);

/// Keeps the smallest-margin edge user of every serving BS, ordered by BS id.
EdgeUserSet one_per_serving_bs(const EdgeUserSet& edge);

/// AP problem over BSs. Node k is BS `bs_ids[k]`, whose associated edge user
/// is `user_ids[k]`.
struct SimilarityProblem {
  ap::Problem problem;
  std::vector<int> bs_ids;
  std::vector<int> user_ids;
};

/// S(m,n) is the RSRP in dBm from BS m at the edge user associated with BS n.
/// Only BSs serving an edge user take part. Preference defaults to the
/// off-diagonal median unless `preference_dbm` is given.
SimilarityProblem build_similarity(const ChannelState& channel, const EdgeUserSet& edge,
                                   double damping = 0.5,
                                   const double* preference_dbm = nullptr);

struct ApOptions {
  int n_prb = 15;
  double damping = 0.5;
  int max_iterations = 200;
  int stability_window = 10;
  const double* preference_dbm = nullptr;
};

/// AP clusters of BSs, each serving its exemplar's edge user, with members
/// whose RSRP at that user is below `p0_w` removed. Clusters go to PRBs
/// round-robin in exemplar order.
ClusterAssignment form_clusters(const ChannelState& channel, const EdgeUserSet& edge,
                                double p0_w, const ApOptions& options);
inline ClusterAssignment form_clusters(const ChannelState& channel, const EdgeUserSet& edge,
                                       double p0_w, double damping, int n_prb = 15) {
  ApOptions o;
  o.n_prb = n_prb;
  o.damping = damping;
  return form_clusters(channel, edge, p0_w, o);
}

/// Same as above but on a caller-supplied similarity problem.
ClusterAssignment clusters_from_problem(const ChannelState& channel,
                                        const SimilarityProblem& sp, double p0_w,
                                        int n_prb, ap::Result* ap_result = nullptr);

/// Every edge user served by its `size` strongest BSs. User k starts at PRB
/// k mod n_prb and moves to the next PRB until its set is disjoint from the
/// sets already placed there.
ClusterAssignment fixed_size_clusters(const ChannelState& channel, const EdgeUserSet& edge,
                                      int size, int n_prb);

/// Checks per-PRB disjointness and non-empty sets. Returns a description of
/// the first violation, or an empty string.
std::string check_assignment(const ClusterAssignment& assignment, int n_bs);

}  // namespace compsim
