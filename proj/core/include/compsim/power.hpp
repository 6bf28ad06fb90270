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

#include <Eigen/Dense>

#include "compsim/channel.hpp"
#include "compsim/config.hpp"
#include "compsim/scheduling.hpp"

namespace compsim {

enum class UserKind { high, low };

/// Bargaining type of a scheduled user: high-type weighs 2, low-type 1.
struct UserType {
  UserKind kind = UserKind::low;
  double weight = 1.0;

  static UserType high() { return {UserKind::high, 2.0}; }
  static UserType low() { return {UserKind::low, 1.0}; }
};

/// High-type iff rsrp > rho0 (strict). Throws DomainError if rho0 <= 0.
UserType classify_user(double rsrp_w, double rho0_w);

/// T = sinr * exp(rate / file_size). Throws DomainError if rate <= 0 or
/// file_size <= 0.
double utility_T(double sinr, double rate_bps, double file_size_bits);

/// Same utility written through the Shannon rate:
/// sinr * (1 + sinr)^(B / (R * M * ln 2)).
double utility_T_shannon(double sinr, double bandwidth_hz, int n_prb, double file_size_bits);

/// Two clusters of `n` BSs each, one user per cluster. Cluster 1 reaches
/// user 1 with gain g1 and user 2 with g4; cluster 2 reaches user 2 with g2
/// and user 1 with g3.
struct TwoUserInstance {
  int n = 1;
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0;
  double sigma2 = 0.0;
  double p_max = 0.0;
  double p0 = 0.0;
  UserType type1, type2;
  double bandwidth_hz = 3e6;
  int n_prb = 15;
  double file_size_bits = 8.388608e8;

  void validate() const;
  double sinr1(double p1, double p2) const;
  double sinr2(double p1, double p2) const;
  /// Lower end of the feasible power range of each cluster, p0 / g_serving.
  double p1_min() const { return p0 / g1; }
  double p2_min() const { return p0 / g2; }
};

/// F1 = sinr1^w1 * sinr2^w2.
double objective_F1(const TwoUserInstance& inst, double p1, double p2);
/// F2 = log F1.
double objective_F2(const TwoUserInstance& inst, double p1, double p2);
/// U1 = T1^w1 * T2^w2 with the delay-aware utility T.
double objective_U1(const TwoUserInstance& inst, double p1, double p2);

struct Gradient {
  double d_p1 = 0.0;
  double d_p2 = 0.0;
};

/// Analytic partial derivatives of F2.
Gradient gradient_F2(const TwoUserInstance& inst, double p1, double p2);

enum class PowerCase { same_type, high_low, low_high };

struct TwoUserPower {
  double p1 = 0.0;
  double p2 = 0.0;
  PowerCase power_case = PowerCase::same_type;
  bool clamped = false;

  std::string label() const;
};

/// Closed-form bargaining powers:
///  - same type: both clusters at p_max;
///  - user 1 high, user 2 low: (p_max, sigma2 / (n g3));
///  - user 1 low, user 2 high: (sigma2 / (n g4), p_max);
/// then clamped into [p0 / g_serving, p_max]. Throws InfeasibleError
/// (user 1 or 2) when that box is empty.
TwoUserPower two_user_nbs_power(const TwoUserInstance& inst);

enum class Objective { F1, U1 };

struct GridResult {
  double p1 = 0.0;
  double p2 = 0.0;
  double value = 0.0;
  double step1 = 0.0;
  double step2 = 0.0;
};

/// Exhaustive argmax of the objective on a uniform grid x grid lattice over
/// [p1_min, p_max] x [p2_min, p_max]. Ties keep the lowest indices.
/// Throws DomainError when grid < 10.
GridResult grid_oracle(const TwoUserInstance& inst, int grid, Objective objective = Objective::F1);

struct HessianConditions {
  double A = 0.0;  // d2 F2 / d p1^2
  double C = 0.0;  // d2 F2 / d p2^2
  bool det_ok = false;  // A*C - B^2 > 0 with B = 0
  bool a_neg = false;
  /// n g3 p2 < (1 + sqrt 2) sigma2 for high/low and n g4 p1 < ... for
  /// low/high; true for same-type pairs.
  bool interference_ok = false;
};

HessianConditions hessian_conditions(const TwoUserInstance& inst, double p1, double p2);

/// Grid argmax of F1 versus U1 on the same lattice.
struct ObjectiveComparison {
  GridResult f1;
  GridResult u1;
  bool agree = false;  // within one grid step per coordinate
};
ObjectiveComparison compare_objectives(const TwoUserInstance& inst, int grid);

/// Per-PRB transmit power, rows are PRBs and columns are BS ids.
struct PowerAllocation {
  Eigen::MatrixXd watts;
  double p_max = 0.0;

  int n_prb() const { return static_cast<int>(watts.rows()); }
  int n_bs() const { return static_cast<int>(watts.cols()); }
  /// Sum over PRBs of BS j's power.
  double bs_total(int bs_id) const { return watts.col(bs_id).sum(); }
};

/// Which (PRB, BS) pairs carry a transmission. With full background load
/// every BS is busy on every PRB (serving its own non-edge users when it is
/// in no cooperating set); otherwise only cooperating-set members transmit.
Eigen::MatrixXi activity(const ClusterAssignment& assignment, int n_bs, BackgroundLoad load);

/// Maximum-power rule: every active (PRB, BS) pair gets p_max divided by
/// the number of PRBs the BS is active on.
PowerAllocation multi_user_power(const ClusterAssignment& assignment, int n_bs, double p_max,
                                 BackgroundLoad load = BackgroundLoad::none);

/// Record of one PRB where the two-user bargaining rule was applied.
struct BargainingRecord {
  int prb = 0;
  int user1 = 0;
  int user2 = 0;
  TwoUserInstance instance;
  TwoUserPower power;
};

struct NbsOptions {
  double p_max = 0.0;
  double p0 = 0.0;
  double rho0 = 0.0;
  double bandwidth_hz = 3e6;
  double file_size_bits = 8.388608e8;
  BackgroundLoad load = BackgroundLoad::full;
};

struct NbsAllocation {
  PowerAllocation power;
  std::vector<BargainingRecord> bargains;
  std::map<int, UserType> types;
};

/// Reduces a PRB with two clusters to a two-user instance: n is the smaller
/// cluster size, each g the mean link gain from a cluster to a user, and
/// p_max the per-PRB budget of the BSs involved.
TwoUserInstance two_user_instance(const ScheduledUser& first, const ScheduledUser& second,
                                  const ChannelState& channel, const UserType& t1,
                                  const UserType& t2, double per_prb_p_max, double p0,
                                  double bandwidth_hz, int n_prb, double file_size_bits);

/// Bargaining power control for a whole assignment: users are typed against
/// rho0 on their best RSRP. A PRB whose only transmitters are two clusters
/// uses the two-user closed form; every other PRB keeps the maximum-power
/// rule.
NbsAllocation nbs_power(const ClusterAssignment& assignment, const ChannelState& channel,
                        const NbsOptions& options);

/// F2 = sum_i w_i log(sinr_i) over every scheduled user. Interference is
/// evaluated with `interference_power` (pass the same allocation for the
/// fully coupled value, or a frozen one for the per-cluster view where a
/// user's term depends only on its own cluster's powers).
double multi_user_F2(const ClusterAssignment& assignment, const PowerAllocation& power,
                     const PowerAllocation& interference_power, const ChannelState& channel,
                     const std::map<int, UserType>& types);

struct ConstraintReport {
  int negative = 0;         // C1
  int over_budget = 0;      // sum over PRBs > p_max
  int below_p0 = 0;         // C2 on cooperating links
  std::string first_violation;
  bool ok() const { return negative == 0 && over_budget == 0; }
};

ConstraintReport check_power(const PowerAllocation& power, const ClusterAssignment& assignment,
                             const ChannelState& channel, double p0);

}  // namespace compsim
