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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "compsim/config.hpp"
#include "compsim/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace compsim {
namespace {

EdgeUser edge_of(const ChannelState& ch, int user) {
  int best = 0;
  for (int j = 1; j < ch.n_bs(); ++j) {
    if (ch.rsrp(j, user) > ch.rsrp(best, user)) best = j;
  }
  double second = 0.0;
  for (int j = 0; j < ch.n_bs(); ++j) {
    if (j != best) second = std::max(second, ch.rsrp(j, user));
  }
  return {user, best, ch.rsrp(best, user), second};
}

struct Scenario {
  Topology topo;
  ChannelState channel;
  EdgeUserSet edge;
};

Scenario random_scenario(std::uint64_t seed, Deployment dep = Deployment::sa) {
  ScenarioConfig c;
  c.users_per_cell = 40;
  c.deployment = dep;
  if (dep == Deployment::nsa) c.cell_radius_m = 200.0;
  Scenario s;
  s.topo = build_topology(c, seed);
  s.channel = compute_channel(s.topo, c.antenna_gain_db, c.bandwidth_hz, c.n_prb);
  s.edge = select_edge_users(s.channel, s.topo, 6.0, c.bs_per_cell());
  return s;
}

// ----------------------------------------------------------- edge users ----

TEST(EdgeUsers, EquidistantUserIsEdge) {
  const Topology t = fixture::hand_topology({{0, 0}, {100, 0}}, {{50, 0}, {5, 0}});
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet e = select_edge_users(ch, t, 6.0, 0);
  ASSERT_EQ(e.users.size(), 1u);
  EXPECT_EQ(e.users[0].user_id, 0);
  EXPECT_NEAR(e.users[0].margin_db(), 0.0, 1e-9);
}

TEST(EdgeUsers, CellCentreUserIsNotEdge) {
  ScenarioConfig c;
  c.users_per_cell = 1;
  Topology t = build_topology(c, 1);
  t.users[0].position = t.cells[0].position;
  t.users[0].position.x += 2.0;
  const ChannelState ch = compute_channel(t, 5.0, 3e6, 15);
  // 2 m from its own BS; the runner-up is the nearest other cell centre.
  double nearest_other = 1e300;
  for (std::size_t i = 1; i < t.cells.size(); ++i) {
    nearest_other = std::min(nearest_other, distance(t.users[0].position, t.cells[i].position));
  }
  const double expected_margin = 37.6 * std::log10(nearest_other / 2.0);
  EXPECT_GT(expected_margin, 6.0);
  const EdgeUser e = edge_of(ch, 0);
  EXPECT_NEAR(e.margin_db(), expected_margin, 1e-6);
  for (const auto& u : select_edge_users(ch, t, 6.0, 0).users) EXPECT_NE(u.user_id, 0);
}

TEST(EdgeUsers, PerCellKeepsSmallestMargins) {
  const Topology t = fixture::hand_topology({{0, 0}, {100, 0}},
                                            {{45, 0}, {49, 0}, {42, 0}}, {0, 0, 0});
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet all = select_edge_users(ch, t, 6.0, 0);
  ASSERT_EQ(all.users.size(), 3u);
  const EdgeUserSet one = select_edge_users(ch, t, 6.0, 1);
  ASSERT_EQ(one.users.size(), 1u);
  EXPECT_EQ(one.users[0].user_id, 1);
}

TEST(EdgeUsers, InvariantsOnRandomLayouts) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = random_scenario(seed);
    EXPECT_FALSE(s.edge.users.empty());
    for (const auto& e : s.edge.users) {
      const EdgeUser ref = edge_of(s.channel, e.user_id);
      EXPECT_EQ(e.serving_bs, ref.serving_bs);
      EXPECT_DOUBLE_EQ(e.rsrp_best_w, ref.rsrp_best_w);
      EXPECT_DOUBLE_EQ(e.rsrp_second_w, ref.rsrp_second_w);
      EXPECT_GE(e.rsrp_best_w, e.rsrp_second_w);
      EXPECT_LT(e.margin_db(), 6.0);
    }
  }
}

TEST(EdgeUsers, RejectsNonPositiveMargin) {
  const Scenario s = random_scenario(1);
  EXPECT_THROW(select_edge_users(s.channel, s.topo, 0.0, 1), DomainError);
}

TEST(EdgeUsers, OnePerServingBsKeepsTheTightest) {
  const EdgeUserSet in{{{3, 0, 10.0, 9.0}, {4, 0, 10.0, 5.0}, {5, 1, 8.0, 1.0}, {1, 0, 10.0, 9.0}}};
  const EdgeUserSet out = one_per_serving_bs(in);
  ASSERT_EQ(out.users.size(), 2u);
  EXPECT_EQ(out.users[0].user_id, 1);  // ties with user 3, lower id wins
  EXPECT_EQ(out.users[1].user_id, 5);
}

// ----------------------------------------------------------- similarity ----

TEST(Similarity, EntriesAreRsrpInDbm) {
  const Topology t = fixture::hand_topology({{0, 0}, {120, 0}, {240, 0}},
                                            {{50, 0}, {170, 0}, {200, 0}}, {0, 1, 2});
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet edge{{{0, 0, 0, 0}, {1, 1, 0, 0}, {2, 2, 0, 0}}};
  const SimilarityProblem sp = build_similarity(ch, edge);
  ASSERT_EQ(sp.problem.size(), 3);
  const double pos[3] = {0, 120, 240};
  const double upos[3] = {50, 170, 200};
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      if (m == n) continue;
      const double d = std::abs(pos[m] - upos[n]);
      const double dbm = 10.0 * std::log10(20.0 * 1000.0) + 5.0 - oracle::path_loss_db(d);
      EXPECT_NEAR(sp.problem.similarity(m, n), dbm, 1e-9);
    }
  }
}

TEST(Similarity, CoLocatedBsGiveIdenticalRows) {
  const Topology t = fixture::hand_topology({{0, 0}, {0, 0}, {150, 0}},
                                            {{30, 10}, {-20, 5}, {120, 0}}, {0, 1, 2});
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet edge{{{0, 0, 0, 0}, {1, 1, 0, 0}, {2, 2, 0, 0}}};
  const SimilarityProblem sp = build_similarity(ch, edge);
  EXPECT_DOUBLE_EQ(sp.problem.similarity(0, 2), sp.problem.similarity(1, 2));
}

TEST(Similarity, EmptyEdgeSetIsAnError) {
  const Scenario s = random_scenario(2);
  try {
    build_similarity(s.channel, EdgeUserSet{});
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "no edge users to schedule");
  }
}

TEST(Similarity, DefaultPreferenceIsTheMedian) {
  const Scenario s = random_scenario(3);
  const SimilarityProblem sp = build_similarity(s.channel, s.edge);
  const double med = oracle::median_off_diagonal(sp.problem.similarity);
  for (int i = 0; i < sp.problem.size(); ++i) EXPECT_DOUBLE_EQ(sp.problem.preference(i), med);
  const double fixed = -95.0;
  const SimilarityProblem sq = build_similarity(s.channel, s.edge, 0.5, &fixed);
  for (int i = 0; i < sq.problem.size(); ++i) EXPECT_DOUBLE_EQ(sq.problem.preference(i), fixed);
}

TEST(Similarity, TransmitPowerOffsetShiftsEntriesAndKeepsClusters) {
  const Scenario s = random_scenario(4);
  ChannelState louder = s.channel;
  const double c_db = 3.0;
  louder.rsrp *= std::pow(10.0, c_db / 10.0);
  const SimilarityProblem a = build_similarity(s.channel, s.edge);
  const SimilarityProblem b = build_similarity(louder, s.edge);
  for (int m = 0; m < a.problem.size(); ++m) {
    for (int n = 0; n < a.problem.size(); ++n) {
      if (m != n) EXPECT_NEAR(b.problem.similarity(m, n) - a.problem.similarity(m, n), c_db, 1e-9);
    }
  }
  EXPECT_EQ(ap::cluster(a.problem).assignment, ap::cluster(b.problem).assignment);
}

// ------------------------------------------------------------- clusters ----

SimilarityProblem two_pair_problem(const ChannelState&) {
  SimilarityProblem sp;
  sp.bs_ids = {0, 1, 2, 3};
  sp.user_ids = {0, 0, 1, 1};
  Eigen::MatrixXd s(4, 4);
  s << 0, -60, -95, -100,
       -60, 0, -90, -95,
       -95, -90, 0, -60,
       -100, -95, -60, 0;
  sp.problem = ap::make_problem(s, 0.5);
  return sp;
}

TEST(FormClusters, TwoPairGeometrySplitsIntoTwoPairs) {
  const Topology t = fixture::two_pair_line();
  const ChannelState ch = fixture::channel_of(t);
  const SimilarityProblem sp = two_pair_problem(ch);
  const std::vector<int> best = oracle::best_assignment(sp.problem.similarity,
                                                        sp.problem.preference);
  ap::Result res;
  const ClusterAssignment a = clusters_from_problem(ch, sp, 0.0, 15, &res);
  EXPECT_EQ(res.assignment[0], res.assignment[1]);
  EXPECT_EQ(res.assignment[2], res.assignment[3]);
  EXPECT_NE(res.assignment[0], res.assignment[2]);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(res.assignment[i] == res.assignment[j], best[i] == best[j]);
  }
  ASSERT_EQ(a.n_scheduled(), 2);
  EXPECT_EQ(a.find(0).cbs, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.find(1).cbs, (std::vector<int>{2, 3}));
}

TEST(FormClusters, ZeroThresholdKeepsApClustersIntact) {
  const Scenario s = random_scenario(5);
  SimilarityProblem sp = build_similarity(s.channel, s.edge);
  ap::Result res;
  const ClusterAssignment a = clusters_from_problem(s.channel, sp, 0.0, 15, &res);
  EXPECT_EQ(a.n_scheduled(), static_cast<int>(res.exemplars.size()));
  int members = 0;
  for (const auto& [prb, users] : a.per_prb) {
    for (const auto& u : users) members += static_cast<int>(u.cbs.size());
  }
  EXPECT_EQ(members, sp.problem.size());
  EXPECT_EQ(a.serving_below_p0, 0);
}

TEST(FormClusters, HugeThresholdLeavesOnlyServingBs) {
  const Scenario s = random_scenario(6);
  const ClusterAssignment a = form_clusters(s.channel, s.edge, 1e9, 0.5);
  ASSERT_GT(a.n_scheduled(), 0);
  for (const auto& [prb, users] : a.per_prb) {
    for (const auto& u : users) EXPECT_EQ(u.cbs, std::vector<int>{u.serving_bs});
  }
  EXPECT_EQ(a.serving_below_p0, a.n_scheduled());
  bool pruned_warning = false;
  for (const auto& w : a.warnings) pruned_warning |= w.find("pruned") != std::string::npos;
  EXPECT_TRUE(pruned_warning);
}

TEST(FormClusters, MembersClearThresholdAndPrbsAreDisjoint) {
  for (auto dep : {Deployment::sa, Deployment::nsa}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Scenario s = random_scenario(seed, dep);
      const double p0 = dbm_to_watts(-90.0);
      const ClusterAssignment a = form_clusters(s.channel, s.edge, p0, 0.5);
      EXPECT_EQ(check_assignment(a, s.channel.n_bs()), "");
      int below = 0;
      for (const auto& [prb, users] : a.per_prb) {
        for (const auto& u : users) {
          EXPECT_TRUE(std::binary_search(u.cbs.begin(), u.cbs.end(), u.serving_bs));
          for (int j : u.cbs) {
            if (s.channel.rsrp(j, u.user_id) < p0) {
              EXPECT_EQ(j, u.serving_bs);
              ++below;
            }
          }
        }
      }
      EXPECT_EQ(below, a.serving_below_p0);
    }
  }
}

TEST(FormClusters, ClustersAreSpreadRoundRobin) {
  const Scenario s = random_scenario(7);
  const ClusterAssignment a = form_clusters(s.channel, s.edge, 0.0, 0.5, 2);
  const int n = a.n_scheduled();
  ASSERT_GE(n, 2);
  EXPECT_EQ(static_cast<int>(a.per_prb.at(0).size()), (n + 1) / 2);
  EXPECT_EQ(static_cast<int>(a.per_prb.at(1).size()), n / 2);
}

TEST(FormClusters, Deterministic) {
  const Scenario s = random_scenario(8);
  const ClusterAssignment a = form_clusters(s.channel, s.edge, dbm_to_watts(-110.0), 0.5);
  const ClusterAssignment b = form_clusters(s.channel, s.edge, dbm_to_watts(-110.0), 0.5);
  ASSERT_EQ(a.per_prb.size(), b.per_prb.size());
  for (const auto& [prb, users] : a.per_prb) {
    ASSERT_EQ(users.size(), b.per_prb.at(prb).size());
    for (std::size_t i = 0; i < users.size(); ++i) {
      EXPECT_EQ(users[i].user_id, b.per_prb.at(prb)[i].user_id);
      EXPECT_EQ(users[i].cbs, b.per_prb.at(prb)[i].cbs);
    }
  }
}

// ----------------------------------------------------------- fixed size ----

TEST(FixedSize, SizeOneIsStrongestBs) {
  const Scenario s = random_scenario(9);
  const ClusterAssignment a = fixed_size_clusters(s.channel, s.edge, 1, 15);
  EXPECT_EQ(a.n_scheduled(), static_cast<int>(s.edge.users.size()));
  for (const auto& e : s.edge.users) {
    EXPECT_EQ(a.find(e.user_id).cbs, std::vector<int>{edge_of(s.channel, e.user_id).serving_bs});
  }
}

TEST(FixedSize, SizeTwoOnTwoPairLine) {
  const Topology t = fixture::two_pair_line();
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet edge{{edge_of(ch, 0), edge_of(ch, 1)}};
  const ClusterAssignment a = fixed_size_clusters(ch, edge, 2, 15);
  EXPECT_EQ(a.find(0).cbs, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.find(0).serving_bs, 1);
  EXPECT_EQ(a.find(1).cbs, (std::vector<int>{2, 3}));
  EXPECT_EQ(a.find(1).serving_bs, 2);
}

TEST(FixedSize, OverlappingSetsGoToDifferentPrbs) {
  const Topology t = fixture::hand_topology({{0, 0}, {100, 0}, {200, 0}},
                                            {{60, 0}, {40, 0}}, {1, 0});
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet edge{{edge_of(ch, 0), edge_of(ch, 1)}};
  const ClusterAssignment a = fixed_size_clusters(ch, edge, 2, 1);
  EXPECT_EQ(a.n_scheduled(), 1);
  EXPECT_EQ(a.warnings.size(), 1u);
  const ClusterAssignment b = fixed_size_clusters(ch, edge, 2, 3);
  EXPECT_EQ(b.n_scheduled(), 2);
  EXPECT_NE(b.prb_of(0), b.prb_of(1));
  EXPECT_EQ(check_assignment(b, 3), "");
}

TEST(FixedSize, OversizeIsCappedWithWarning) {
  const Topology t = fixture::two_pair_line();
  const ChannelState ch = fixture::channel_of(t);
  const EdgeUserSet edge{{edge_of(ch, 0)}};
  const ClusterAssignment a = fixed_size_clusters(ch, edge, 9, 15);
  EXPECT_EQ(a.find(0).cbs.size(), 4u);
  ASSERT_FALSE(a.warnings.empty());
  EXPECT_THROW(fixed_size_clusters(ch, edge, 0, 15), DomainError);
}

TEST(FixedSize, DisjointOnRandomLayouts) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = random_scenario(seed, seed % 2 ? Deployment::sa : Deployment::nsa);
    for (int size = 1; size <= 6; ++size) {
      const ClusterAssignment a = fixed_size_clusters(s.channel, s.edge, size, 15);
      EXPECT_EQ(check_assignment(a, s.channel.n_bs()), "");
      for (const auto& [prb, users] : a.per_prb) {
        for (const auto& u : users) EXPECT_EQ(static_cast<int>(u.cbs.size()), size);
      }
    }
  }
}

TEST(Assignment, CheckerFlagsViolations) {
  ClusterAssignment a;
  a.n_prb = 2;
  a.per_prb[0] = {{1, {0, 1}, 0}, {2, {1, 2}, 2}};
  EXPECT_NE(check_assignment(a, 3), "");
  a.per_prb[0] = {{1, {0, 1}, 0}, {2, {}, 2}};
  EXPECT_NE(check_assignment(a, 3), "");
  a.per_prb[0] = {{1, {0, 1}, 0}};
  a.per_prb[1] = {{1, {2}, 2}};
  EXPECT_NE(check_assignment(a, 3), "");
  a.per_prb.erase(1);
  EXPECT_EQ(check_assignment(a, 3), "");
  EXPECT_THROW(a.find(9), LookupError);
  EXPECT_THROW(a.prb_of(9), LookupError);
}

}  // namespace
}  // namespace compsim
