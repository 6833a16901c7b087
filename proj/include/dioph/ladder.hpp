// Copyright 2026 The dioph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/additive.hpp"
#include "dioph/real.hpp"

namespace dioph {

/// v_0 > v_1 > ... > v_J with v_{j+1} = v_j - v_j^(1+xi).
struct IntervalLadder {
  Real v0;
  Real xi;
  std::vector<Real> values;

  std::size_t depth() const { return values.empty() ? 0 : values.size() - 1; }
  const Real& operator[](std::size_t j) const { return values[j]; }
  /// Appends levels until depth() == J.
  void extend_to(std::size_t J);
};

/// Throws DomainError unless 0 < v0 < 1 and xi > 0.
IntervalLadder extend_ladder(const Real& v0, const Real& xi, std::size_t J);

struct PartitionRequest {
  std::vector<AdditiveFunction> functions;
  int A = 1;
  mpz_class K = 1;
  std::size_t J = 0;
  Real xi;

  /// Smallest lambda over the functions; the sub-interval widths use it.
  double lambda_min() const;
  std::size_t k() const { return functions.size(); }
};

/// Derives A from the functions and checks 0 < xi < lambda_min / A.
PartitionRequest make_request(std::vector<AdditiveFunction> functions, const mpz_class& K, std::size_t J, const Real& xi);

struct V0Verdict {
  std::vector<std::string> violations;
  /// First failing level for the A = 2 counting condition.
  std::optional<std::size_t> first_failing_level;
  bool pass() const { return violations.empty(); }
};

/// Checks v0 < min t0, v0 below the positive values f_i(p) for p <= K, and the
/// sub-interval counting condition (v0^(xi-lambda) >= 2k when A = 1, otherwise
/// v_j^(xi-lambda) >= 2k^2 (j+1) for all j <= J).
V0Verdict check_v0(const PartitionRequest& request, const Real& v0);

struct PartitionEntry {
  std::size_t function = 0;
  std::size_t level = 0;
  bool spare = false;
  mpz_class prime;
  Real value;
  /// Sub-interval (lower, upper] the value was drawn from.
  Real lower, upper;
};

struct PrimePartition {
  IntervalLadder ladder;  // v_0 .. v_{J+1}
  std::vector<std::vector<mpz_class>> sets;
  std::vector<std::vector<mpz_class>> spares;
  mpz_class residual_floor;
  std::vector<PartitionEntry> entries;
  V0Verdict verdict;

  /// True if p is in some set (spares excluded).
  bool in_sets(const mpz_class& p) const;
  bool in_spares(const mpz_class& p) const;
};

/// Greedy per level: anchors t = v_j, t <- t - t^(1+lambda) while t > v_{j+1}, each
/// anchor giving the sub-interval (max(t - t^(1+lambda), v_{j+1}), t]. Sub-intervals
/// already used at the level, or containing f_i'(q) for a prime q chosen earlier, are
/// skipped. The check_v0 verdict is recorded, not enforced; a level that runs out of
/// sub-intervals throws ConstructionError.
PrimePartition build_partition(const PartitionRequest& request, const Real& v0);

}  // namespace dioph
