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

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dioph/additive.hpp"
#include "dioph/factor.hpp"
#include "dioph/ladder.hpp"
#include "dioph/real.hpp"

namespace dioph {

struct EtaVerdict {
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// 0 < eta < min(v0, 6^(-1/xi), gamma_i), and (eta/2)^xi' > eta^xi when xi' is given.
EtaVerdict check_eta(const Real& eta, const Real& v0, const Real& xi, std::span<const Real> gammas,
                     const std::optional<Real>& xi_prime = std::nullopt);

/// Candidate primes for a base n_{i,0}: either an explicit list, or every prime in
/// (floor, limit] that is not excluded.
struct PrimePool {
  mpz_class floor = 1;
  std::uint64_t limit = 100'000'000;
  std::set<mpz_class> excluded;
  std::optional<std::vector<mpz_class>> explicit_primes;

  /// Primes above K outside the partition sets; spares stay available.
  static PrimePool from_partition(const PrimePartition& partition, std::uint64_t limit = 100'000'000);
};

/// Squarefree product of pool primes, none in `forbidden`, with f-value strictly inside
/// (gamma - eta, gamma - eta/2). Primes are visited in decreasing f-value and taken
/// whenever they do not overshoot gamma - eta/2. Throws ConstructionError with the
/// deficit if the pool runs out.
Factorization build_base(const AdditiveFunction& f, const Real& gamma, const Real& eta, const PrimePool& pool,
                         const std::set<mpz_class>& forbidden = {});

struct ChainStep {
  mpz_class prime;
  Real tau;
};

struct GreedyState {
  AdditiveFunction function;
  Real gamma;
  Real eta;
  Real xi;
  Factorization base;
  mpz_class n;
  Real tau;  // gamma - f(n), rounded up
  std::vector<ChainStep> chain;
  std::set<mpz_class> used;

  std::size_t j() const { return chain.size(); }
};

GreedyState start_state(const AdditiveFunction& f, const Real& gamma, const Real& eta, const Real& xi, Factorization base);

/// Appends the prime of `column` (skipping used ones) with the largest f-value in
/// (tau - 3 tau^(1+xi), tau - tau^(1+xi)]. Throws ConstructionError if none.
void refine_step(GreedyState& state, std::span<const mpz_class> column);

struct Snapshot {
  std::size_t j = 0;
  mpz_class n;
  Factorization factorization;
  Real value;      // f(n), fresh evaluation
  Real tau;        // gamma - value
  Real error_bound;  // 3^j eta^((1+xi)^j)
  mpz_class size_bound;
  bool error_ok = false;
  bool tau_ok = false;
  bool size_ok = false;
  bool divides_next = true;

  bool certified() const { return error_ok && tau_ok && size_ok && divides_next; }
};

struct ModulusSequence {
  std::size_t function = 0;
  std::vector<Snapshot> snapshots;
  bool certified() const;
};

/// Ceiling of (2C)^(j/delta) n0 / (eta/2)^((1+xi)^j / (delta xi)), evaluated rounding up.
mpz_class size_bound(const AdditiveFunction& f, const mpz_class& n0, const Real& eta, const Real& xi, std::size_t j);

/// 3^j eta^((1+xi)^j), rounded up.
Real error_bound(const Real& eta, const Real& xi, std::size_t j);

/// Recomputes every invariant of a chain from scratch (fresh factorization and
/// evaluation), with rounding slack 2^-(precision - 16).
ModulusSequence certify_chain(const GreedyState& state, std::size_t function = 0);

/// Default sieve limit for a base: past (2C/eta)^(1/delta) every usable prime fits the
/// remaining gap, so the limit sits a few times above that (at least 10^8, at most 2^40).
std::uint64_t base_pool_limit(const AdditiveFunction& f, const Real& eta);

/// pool_limit 0 picks base_pool_limit(f, eta).
/// Chain of J + 1 moduli for function i, drawing refinement primes from partition.sets[i].
ModulusSequence construct_sequence(const AdditiveFunction& f, const Real& gamma, const Real& eta, const PrimePartition& partition,
                                   std::size_t i, std::size_t J, const std::set<mpz_class>& forbidden = {},
                                   std::uint64_t pool_limit = 0);

/// All k chains, bases built in order with earlier base primes forbidden.
std::vector<ModulusSequence> construct_all(const PartitionRequest& request, std::span<const Real> gammas, const Real& eta,
                                           const PrimePartition& partition, std::size_t J,
                                           std::uint64_t pool_limit = 0);

/// Smallest ladder depth whose last interval lies below every refinement window that a
/// chain of depth J can reach (tau_j >= (eta/2)^((1+xi)^j)).
std::size_t required_ladder_depth(const Real& v0, const Real& xi, const Real& eta, std::size_t J);

/// Mantissa bits needed so the depth-J error bound stays far above rounding noise.
long required_precision(const Real& eta, const Real& xi, std::size_t J);

}  // namespace dioph
