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
#include <string>
#include <vector>

#include "dioph/congruence.hpp"
#include "dioph/factor.hpp"

namespace dioph {

/// a m + b with the row a m + b ≡ 0 (mod modulus).
struct LinearForm {
  mpz_class a;
  mpz_class b;
  mpz_class modulus = 1;
};

/// An integer polynomial in s of degree <= 2: coeffs[0] + coeffs[1] s + coeffs[2] s^2,
/// equal to (the form's value at m = h + sN) / planned.
struct CofactorPoly {
  std::vector<mpz_class> coeffs;
  mpz_class planned = 1;
  std::string label;

  mpz_class value(const mpz_class& s) const;
  std::size_t degree() const;
};

struct LinearSystem {
  std::vector<LinearForm> forms;
  mpz_class L = 1;
  bool quadratic = false;
  std::vector<Congruence> rows;
  Congruence solution;
  /// Every residue class mod N solving the rows (several in quadratic mode), ascending.
  std::vector<Congruence> all_solutions;
  std::vector<CofactorPoly> cofactors;

  const mpz_class& h() const { return solution.residue(); }
  const mpz_class& N() const { return solution.modulus(); }
  mpz_class m_at(const mpz_class& s) const { return h() + s * N(); }
};

/// (2 k! prod x)^2 over the nonzero entries of `factors`.
mpz_class sieve_modulus_L(std::size_t k, const std::vector<mpz_class>& factors);

/// Rows m ≡ 0 (mod L) and a_i m + b_i ≡ 0 (mod n_i), reduced by CRT. Cofactor i is
/// (a_i m + b_i) / (|b_i| n_i), or a_i m / (a_i L n_i) when b_i = 0. Throws DomainError
/// if a_i b_j = a_j b_i for some i < j, IncompatibleCongruences or ConstructionError
/// when the rows cannot be met.
LinearSystem assemble_system(const std::vector<LinearForm>& forms, const mpz_class& L);

/// Rows m ≡ 0 (mod 2), m^2 + 2 ≡ 0 (mod n0), m^2 + 1 ≡ 0 (mod n1) for odd squarefree
/// n0, n1. Cofactors (m^2 + 2) / (2 n0) and (m^2 + 1) / n1. `root_choice` selects among
/// the solutions mod N = 2 n0 n1. Throws ConstructionError when a square root is missing.
LinearSystem assemble_quadratic(const Factorization& n0, const Factorization& n1, std::size_t root_choice = 0);

/// Roots of a cofactor modulo a prime, ascending; nullopt if it vanishes identically.
std::optional<std::vector<std::uint64_t>> poly_roots_mod_prime(const CofactorPoly& poly, std::uint64_t p);

/// #{0 <= s < d : prod_i cofactor_i(s) ≡ 0 (mod d)}.
mpz_class omega(const LinearSystem& system, const mpz_class& d);

/// Sieve limit beta_kappa: 2 for kappa = 1, 4.2665 for kappa = 2, and a 3 kappa
/// placeholder above that (flagged through `placeholder`).
double sieve_beta(unsigned kappa, bool* placeholder = nullptr);

struct PrimeForm {
  mpz_class q;
  mpz_class r;
};

struct SieveConfig {
  double mu = 0;
  double epsilon = 0.05;
  double c0 = 0;
  unsigned kappa = 1;
  double beta = 2;
  bool beta_placeholder = false;
  std::uint64_t z = 0;
  std::uint64_t segment_size = 1 << 16;
  unsigned threads = 1;
  std::optional<PrimeForm> require_prime_form;
  /// Stop after this many survivors (0: no limit).
  std::size_t max_survivors = 0;

  /// floor(N^c0), at least 1.
  std::uint64_t z_for(const mpz_class& N) const;
};

enum class SieveVariant { Theorem1, Theorem2, Theorem2PrimeForm, Poly };

struct ParameterInput {
  std::size_t k = 1;
  double delta = 1;
  double lambda_eff = 0.45;
  int A = 1;
  double epsilon = 0.05;
  SieveVariant variant = SieveVariant::Theorem1;
  /// Theorem 1 with k = 1 and a_1 in {1, 2}: no sieve, c approaches delta * lambda.
  bool shortcut = false;
  bool elliott_halberstam = false;
  std::optional<double> xi_prime;
};

struct ParameterChoice {
  SieveConfig config;
  double xi_prime = 0;
  /// Exponent the construction delivers at these parameters.
  double predicted_c = 0;
  /// Supremum of admissible c for the mode (at xi' -> lambda/A, epsilon -> 0).
  double threshold = 0;
};

/// Throws DomainError unless 0 < epsilon < 1/3 and 0 < xi' < lambda_eff / A.
ParameterChoice choose_parameters(const ParameterInput& input);

struct SearchRange {
  mpz_class start = 1;
  std::uint64_t count = 0;
};

struct Survivor {
  mpz_class s;
  mpz_class m;
  std::vector<mpz_class> cofactors;
};

struct SearchStats {
  std::uint64_t segments = 0;
  std::uint64_t scanned = 0;
  std::uint64_t sieve_survivors = 0;
  bool stopped_early = false;
};

constexpr std::uint64_t kMaxSegmentSize = std::uint64_t{1} << 28;

/// Every s in the range for which each cofactor is free of primes <= z, ascending; with
/// require_prime_form also q s + r probably prime. Throws ResourceError if the segment
/// size exceeds kMaxSegmentSize.
std::vector<Survivor> segmented_rough_search(const LinearSystem& system, const SieveConfig& config, const SearchRange& range,
                                             SearchStats* stats = nullptr);

/// X * prod_{p <= z} (1 - omega(p)/p).
double mertens_prediction(const LinearSystem& system, std::uint64_t z, double X);

/// Smallest A with prod_{v <= p < w} (1 - omega(p)/p)^-1 <= (log w / log v)^kappa (1 + A / log v)
/// over 2 <= v < w <= z.
double dimension_constant(const LinearSystem& system, std::uint64_t z, unsigned kappa);

}  // namespace dioph
