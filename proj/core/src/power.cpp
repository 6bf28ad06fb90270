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

#include "compsim/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "compsim/errors.hpp"

namespace compsim {

UserType classify_user(double rsrp_w, double rho0_w) {
  if (!(rho0_w > 0.0)) throw DomainError("rho0 must be positive");
  return rsrp_w > rho0_w ? UserType::high() : UserType::low();
}

double utility_T(double sinr, double rate_bps, double file_size_bits) {
  if (!(rate_bps > 0.0)) throw DomainError("utility needs a positive rate");
  if (!(file_size_bits > 0.0)) throw DomainError("utility needs a positive file size");
  // exp(1 / delay) with delay = file_size / rate
  return sinr * std::exp(rate_bps / file_size_bits);
}

double utility_T_shannon(double sinr, double bandwidth_hz, int n_prb, double file_size_bits) {
  const double exponent = bandwidth_hz / (n_prb * file_size_bits * std::numbers::ln2);
  return sinr * std::pow(1.0 + sinr, exponent);
}

void TwoUserInstance::validate() const {
  if (n < 1) throw DomainError("two-user instance: n must be at least 1");
  for (double g : {g1, g2, g3, g4}) {
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("two-user instance: gains must be positive");
  }
  if (!(sigma2 > 0.0)) throw DomainError("two-user instance: noise must be positive");
  if (!(p_max > 0.0)) throw DomainError("two-user instance: p_max must be positive");
  if (!(p0 > 0.0)) throw DomainError("two-user instance: p0 must be positive");
}

double TwoUserInstance::sinr1(double p1, double p2) const {
  return n * p1 * g1 / (n * p2 * g3 + sigma2);
}

double TwoUserInstance::sinr2(double p1, double p2) const {
  return n * p2 * g2 / (n * p1 * g4 + sigma2);
}

double objective_F1(const TwoUserInstance& inst, double p1, double p2) {
  return std::pow(inst.sinr1(p1, p2), inst.type1.weight) *
         std::pow(inst.sinr2(p1, p2), inst.type2.weight);
}

double objective_F2(const TwoUserInstance& inst, double p1, double p2) {
  return inst.type1.weight * std::log(inst.sinr1(p1, p2)) +
         inst.type2.weight * std::log(inst.sinr2(p1, p2));
}

double objective_U1(const TwoUserInstance& inst, double p1, double p2) {
  const double per_prb = inst.bandwidth_hz / inst.n_prb;
  const double s1 = inst.sinr1(p1, p2);
  const double s2 = inst.sinr2(p1, p2);
  const double t1 = utility_T(s1, per_prb * std::log2(1.0 + s1), inst.file_size_bits);
  const double t2 = utility_T(s2, per_prb * std::log2(1.0 + s2), inst.file_size_bits);
  return std::pow(t1, inst.type1.weight) * std::pow(t2, inst.type2.weight);
}

Gradient gradient_F2(const TwoUserInstance& inst, double p1, double p2) {
  const double w1 = inst.type1.weight, w2 = inst.type2.weight;
  const double n = inst.n;
  return {w1 / p1 - n * inst.g4 * w2 / (n * p1 * inst.g4 + inst.sigma2),
          w2 / p2 - n * inst.g3 * w1 / (n * p2 * inst.g3 + inst.sigma2)};
}

std::string TwoUserPower::label() const {
  std::string s;
  switch (power_case) {
    case PowerCase::same_type: s = "same_type"; break;
    case PowerCase::high_low: s = "high_low"; break;
    case PowerCase::low_high: s = "low_high"; break;
  }
  if (clamped) s += "+clamped";
  return s;
}

TwoUserPower two_user_nbs_power(const TwoUserInstance& inst) {
  inst.validate();
  const double lo1 = inst.p1_min(), lo2 = inst.p2_min();
  if (lo1 > inst.p_max) {
    throw InfeasibleError(1, "user 1 needs " + std::to_string(lo1) +
                                 " W to reach p0 but p_max is " + std::to_string(inst.p_max));
  }
  if (lo2 > inst.p_max) {
    throw InfeasibleError(2, "user 2 needs " + std::to_string(lo2) +
                                 " W to reach p0 but p_max is " + std::to_string(inst.p_max));
  }

  TwoUserPower out;
  if (inst.type1.kind == inst.type2.kind) {
    out = {inst.p_max, inst.p_max, PowerCase::same_type, false};
  } else if (inst.type1.kind == UserKind::high) {
    out = {inst.p_max, inst.sigma2 / (inst.n * inst.g3), PowerCase::high_low, false};
  } else {
    out = {inst.sigma2 / (inst.n * inst.g4), inst.p_max, PowerCase::low_high, false};
  }

  const double c1 = std::clamp(out.p1, lo1, inst.p_max);
  const double c2 = std::clamp(out.p2, lo2, inst.p_max);
  out.clamped = c1 != out.p1 || c2 != out.p2;
  out.p1 = c1;
  out.p2 = c2;
  return out;
}

GridResult grid_oracle(const TwoUserInstance& inst, int grid, Objective objective) {
  if (grid < 10) throw DomainError("grid oracle needs at least 10 points per axis");
  inst.validate();
  const double lo1 = std::min(inst.p1_min(), inst.p_max);
  const double lo2 = std::min(inst.p2_min(), inst.p_max);
  GridResult best;
  best.step1 = (inst.p_max - lo1) / (grid - 1);
  best.step2 = (inst.p_max - lo2) / (grid - 1);
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double p1 = i == grid - 1 ? inst.p_max : lo1 + best.step1 * i;
    for (int j = 0; j < grid; ++j) {
      const double p2 = j == grid - 1 ? inst.p_max : lo2 + best.step2 * j;
      const double v = objective == Objective::F1 ? objective_F1(inst, p1, p2)
                                                  : objective_U1(inst, p1, p2);
      if (v > best.value) {
        best.value = v;
        best.p1 = p1;
        best.p2 = p2;
      }
    }
  }
  return best;
}

HessianConditions hessian_conditions(const TwoUserInstance& inst, double p1, double p2) {
  const double w1 = inst.type1.weight, w2 = inst.type2.weight;
  const double n = inst.n, s2 = inst.sigma2;
  const double i1 = n * p1 * inst.g4 + s2;
  const double i2 = n * p2 * inst.g3 + s2;

  HessianConditions h;
  h.A = -w1 / (p1 * p1) + n * n * inst.g4 * inst.g4 * w2 / (i1 * i1);
  h.C = w1 * n * n * inst.g3 * inst.g3 / (i2 * i2) - w2 / (p2 * p2);
  h.det_ok = h.A * h.C > 0.0;
  h.a_neg = h.A < 0.0;

  const double bound = (1.0 + std::numbers::sqrt2) * s2;
  if (inst.type1.kind == inst.type2.kind) {
    h.interference_ok = true;
  } else if (inst.type1.kind == UserKind::high) {
    h.interference_ok = n * inst.g3 * p2 < bound;
  } else {
    h.interference_ok = n * inst.g4 * p1 < bound;
  }
  return h;
}

ObjectiveComparison compare_objectives(const TwoUserInstance& inst, int grid) {
  ObjectiveComparison c;
  c.f1 = grid_oracle(inst, grid, Objective::F1);
  c.u1 = grid_oracle(inst, grid, Objective::U1);
  const double tol1 = c.f1.step1 * (1.0 + 1e-9);
  const double tol2 = c.f1.step2 * (1.0 + 1e-9);
  c.agree = std::abs(c.f1.p1 - c.u1.p1) <= tol1 && std::abs(c.f1.p2 - c.u1.p2) <= tol2;
  return c;
}

Eigen::MatrixXi activity(const ClusterAssignment& assignment, int n_bs, BackgroundLoad load) {
  if (load == BackgroundLoad::full) return Eigen::MatrixXi::Ones(assignment.n_prb, n_bs);
  Eigen::MatrixXi act = Eigen::MatrixXi::Zero(assignment.n_prb, n_bs);
  for (const auto& [prb, users] : assignment.per_prb) {
    for (const auto& u : users) {
      for (int j : u.cbs) act(prb, j) = 1;
    }
  }
  return act;
}

PowerAllocation multi_user_power(const ClusterAssignment& assignment, int n_bs, double p_max,
                                 BackgroundLoad load) {
  const Eigen::MatrixXi act = activity(assignment, n_bs, load);
  PowerAllocation out;
  out.p_max = p_max;
  out.watts = Eigen::MatrixXd::Zero(assignment.n_prb, n_bs);
  for (int j = 0; j < n_bs; ++j) {
    const int active = act.col(j).sum();
    if (active == 0) continue;
    for (int b = 0; b < assignment.n_prb; ++b) {
      if (act(b, j) != 0) out.watts(b, j) = p_max / active;
    }
  }
  return out;
}

namespace {

double mean_gain(const ChannelState& channel, const std::vector<int>& bs, int user) {
  double s = 0.0;
  for (int j : bs) s += channel.gain(j, user);
  return s / static_cast<double>(bs.size());
}

double best_rsrp(const ChannelState& channel, int user) { return channel.rsrp.col(user).maxCoeff(); }

}  // namespace

TwoUserInstance two_user_instance(const ScheduledUser& first, const ScheduledUser& second,
                                  const ChannelState& channel, const UserType& t1,
                                  const UserType& t2, double per_prb_p_max, double p0,
                                  double bandwidth_hz, int n_prb, double file_size_bits) {
  TwoUserInstance inst;
  inst.n = static_cast<int>(std::min(first.cbs.size(), second.cbs.size()));
  inst.g1 = mean_gain(channel, first.cbs, first.user_id);
  inst.g2 = mean_gain(channel, second.cbs, second.user_id);
  inst.g3 = mean_gain(channel, second.cbs, first.user_id);
  inst.g4 = mean_gain(channel, first.cbs, second.user_id);
  inst.sigma2 = channel.noise_power_w;
  inst.p_max = per_prb_p_max;
  inst.p0 = p0;
  inst.type1 = t1;
  inst.type2 = t2;
  inst.bandwidth_hz = bandwidth_hz;
  inst.n_prb = n_prb;
  inst.file_size_bits = file_size_bits;
  return inst;
}

NbsAllocation nbs_power(const ClusterAssignment& assignment, const ChannelState& channel,
                        const NbsOptions& options) {
  NbsAllocation out;
  out.power = multi_user_power(assignment, channel.n_bs(), options.p_max, options.load);
  for (const auto& [prb, users] : assignment.per_prb) {
    for (const auto& u : users) {
      out.types[u.user_id] = classify_user(best_rsrp(channel, u.user_id), options.rho0);
    }
  }

  const Eigen::MatrixXi act = activity(assignment, channel.n_bs(), options.load);
  for (const auto& [prb, users] : assignment.per_prb) {
    if (users.size() != 2) continue;
    const auto& a = users[0];
    const auto& b = users[1];
    // The two-user model holds only when the two clusters are the sole
    // transmitters on the PRB.
    if (act.row(prb).sum() != static_cast<int>(a.cbs.size() + b.cbs.size())) continue;
    double budget = std::numeric_limits<double>::infinity();
    for (const auto* u : {&a, &b}) {
      for (int j : u->cbs) budget = std::min(budget, out.power.watts(prb, j));
    }
    BargainingRecord rec;
    rec.prb = prb;
    rec.user1 = a.user_id;
    rec.user2 = b.user_id;
    rec.instance = two_user_instance(a, b, channel, out.types.at(a.user_id),
                                     out.types.at(b.user_id), budget, options.p0,
                                     options.bandwidth_hz, assignment.n_prb,
                                     options.file_size_bits);
    try {
      rec.power = two_user_nbs_power(rec.instance);
    } catch (const InfeasibleError& e) {
      const int user = e.user() == 1 ? a.user_id : b.user_id;
      throw InfeasibleError(user, "PRB " + std::to_string(prb) + ", user " +
                                      std::to_string(user) + ": " + e.what());
    }
    for (int j : a.cbs) out.power.watts(prb, j) = rec.power.p1;
    for (int j : b.cbs) out.power.watts(prb, j) = rec.power.p2;
    out.bargains.push_back(std::move(rec));
  }
  return out;
}

double multi_user_F2(const ClusterAssignment& assignment, const PowerAllocation& power,
                     const PowerAllocation& interference_power, const ChannelState& channel,
                     const std::map<int, UserType>& types) {
  double f2 = 0.0;
  for (const auto& [prb, users] : assignment.per_prb) {
    for (const auto& u : users) {
      const auto it = types.find(u.user_id);
      if (it == types.end()) throw LookupError("no type for user " + std::to_string(u.user_id));
      double signal = 0.0;
      double interference = channel.noise_power_w;
      for (int j = 0; j < channel.n_bs(); ++j) {
        const bool member = std::binary_search(u.cbs.begin(), u.cbs.end(), j);
        if (member) {
          signal += power.watts(prb, j) * channel.gain(j, u.user_id);
        } else {
          interference += interference_power.watts(prb, j) * channel.gain(j, u.user_id);
        }
      }
      f2 += it->second.weight * std::log(signal / interference);
    }
  }
  return f2;
}

ConstraintReport check_power(const PowerAllocation& power, const ClusterAssignment& assignment,
                             const ChannelState& channel, double p0) {
  ConstraintReport r;
  auto note = [&](const std::string& s) {
    if (r.first_violation.empty()) r.first_violation = s;
  };
  for (int b = 0; b < power.n_prb(); ++b) {
    for (int j = 0; j < power.n_bs(); ++j) {
      if (power.watts(b, j) < 0.0) {
        ++r.negative;
        note("negative power on PRB " + std::to_string(b) + ", BS " + std::to_string(j));
      }
    }
  }
  for (int j = 0; j < power.n_bs(); ++j) {
    if (power.bs_total(j) > power.p_max * (1.0 + 1e-12)) {
      ++r.over_budget;
      note("BS " + std::to_string(j) + " exceeds p_max");
    }
  }
  for (const auto& [prb, users] : assignment.per_prb) {
    for (const auto& u : users) {
      for (int j : u.cbs) {
        if (power.watts(prb, j) * channel.gain(j, u.user_id) < p0) ++r.below_p0;
      }
    }
  }
  return r;
}

}  // namespace compsim
