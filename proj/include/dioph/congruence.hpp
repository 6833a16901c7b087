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

#include <optional>
#include <span>
#include <vector>

#include "dioph/factor.hpp"

namespace dioph {

/// x ≡ residue (mod modulus), normalized so that 0 <= residue < modulus.
class Congruence {
 public:
  Congruence() : residue_(0), modulus_(1) {}
  Congruence(const mpz_class& residue, const mpz_class& modulus);

  const mpz_class& residue() const { return residue_; }
  const mpz_class& modulus() const { return modulus_; }
  bool satisfied_by(const mpz_class& x) const;

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  mpz_class residue_;
  mpz_class modulus_;
};

/// Combines congruences with arbitrary (not necessarily coprime) moduli. The result is
/// modulo the lcm. Throws IncompatibleCongruences naming a conflicting input pair.
Congruence crt_solve(std::span<const Congruence> congruences);

/// Solutions of a*x + b ≡ 0 (mod n) as a single congruence (mod n/gcd(a,n)), or nullopt.
std::optional<Congruence> solve_linear(const mpz_class& a, const mpz_class& b, const mpz_class& n);

mpz_class mod_inverse(const mpz_class& a, const mpz_class& n);

/// Both roots of x^2 ≡ a (mod p) for an odd prime p ∤ a (Tonelli-Shanks), ascending;
/// empty if a is a non-residue. p = 2 yields the single root a mod 2.
std::vector<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

/// All x in [0, n) with x^2 ≡ a (mod n), ascending, for squarefree n coprime to a.
/// Throws UnsupportedInput for a non-squarefree or incomplete factorization, or gcd(a, n) > 1.
std::vector<mpz_class> modular_sqrt(const mpz_class& a, const Factorization& n);

}  // namespace dioph
