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
#include <string>
#include <vector>

namespace dioph {

/// Deterministic below this bound (Miller-Rabin with the first 13 prime bases).
extern const mpz_class kDeterministicPrimalityBound;

/// Miller-Rabin test: deterministic witnesses below kDeterministicPrimalityBound,
/// otherwise 64 seeded random rounds (error < 2^-128).
bool is_probable_prime(const mpz_class& n, std::uint64_t seed = 0x5eed);
bool is_prime_u64(std::uint64_t n);

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 1;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = prod(prime^exponent) * prod(unfactored). A complete factorization has no
/// unfactored composites.
class Factorization {
 public:
  Factorization() : value_(1) {}
  /// Builds from explicit prime powers; merges duplicates and sorts.
  static Factorization from_factors(std::vector<PrimePower> factors);

  const mpz_class& value() const { return value_; }
  const std::vector<PrimePower>& factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }
  const std::vector<mpz_class>& unfactored() const& { return unfactored_; }
  std::vector<mpz_class> unfactored() && { return std::move(unfactored_); }
  bool complete() const { return unfactored_.empty(); }
  bool squarefree() const;

  /// Number of prime factors counted with multiplicity (complete part only).
  unsigned big_omega() const;

  /// Product of two factorizations (values multiply, exponents add).
  Factorization operator*(const Factorization& other) const;

  /// Re-multiplies the stored factors; equals value() for every well-formed object.
  mpz_class product() const;

  std::string to_string() const;

  void add_prime(const mpz_class& p, unsigned exponent);
  void add_unfactored(const mpz_class& c);

 private:
  void normalize();

  mpz_class value_;
  std::vector<PrimePower> factors_;
  std::vector<mpz_class> unfactored_;
};

struct FactorOptions {
  std::uint64_t trial_bound = 1'000'000;
  /// Total Pollard-Brent iterations across one factorize() call.
  std::uint64_t rho_budget = 4'000'000;
  std::uint64_t seed = 0x5eed;
};

/// Trial division, primality check, then Brent's rho. Cofactors that resist the budget
/// are reported through Factorization::unfactored().
Factorization factorize(const mpz_class& n, const FactorOptions& options = {});

}  // namespace dioph
