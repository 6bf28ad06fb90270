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

#include <cmath>
#include <stdexcept>
#include <string>

namespace compsim {

/// Invalid scenario parameter. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the domain of a formula (e.g. distance below 1 m).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Power box [p0/g, p_max] is empty for some user.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(int user, const std::string& what)
      : std::runtime_error(what), user_(user) {}
  int user() const noexcept { return user_; }

 private:
  int user_;
};

/// Request for a user or PRB that is not part of an assignment.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1000.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace compsim
