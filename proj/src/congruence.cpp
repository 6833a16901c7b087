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

#include "dioph/congruence.hpp"

#include <algorithm>
#include <string>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

mpz_class mod_floor(const mpz_class& x, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string describe(const Congruence& c) { return c.residue().get_str() + " mod " + c.modulus().get_str(); }

bool pair_compatible(const Congruence& a, const Congruence& b) {
  const mpz_class g = gcd(a.modulus(), b.modulus());
  return mod_floor(a.residue() - b.residue(), g) == 0;
}

}  // namespace

Congruence::Congruence(const mpz_class& residue, const mpz_class& modulus) : modulus_(modulus) {
  if (modulus < 1) throw DomainError("congruence modulus must be positive, got " + modulus.get_str());
  residue_ = mod_floor(residue, modulus);
}

bool Congruence::satisfied_by(const mpz_class& x) const { return mod_floor(x - residue_, modulus_) == 0; }

mpz_class mod_inverse(const mpz_class& a, const mpz_class& n) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
    if (n == 1) return 0;
    throw DomainError(a.get_str() + " is not invertible mod " + n.get_str());
  }
  return inv;
}

Congruence crt_solve(std::span<const Congruence> congruences) {
  if (congruences.empty()) throw DomainError("crt_solve: empty congruence list");
  Congruence acc = congruences[0];
  for (std::size_t j = 1; j < congruences.size(); ++j) {
    const Congruence& next = congruences[j];
    const mpz_class g = gcd(acc.modulus(), next.modulus());
    const mpz_class diff = next.residue() - acc.residue();
    if (mod_floor(diff, g) != 0) {
      std::size_t i = 0;
      while (i < j && pair_compatible(congruences[i], next)) ++i;
      if (i == j) i = 0;  // conflict only with the combination; blame the first row
      throw IncompatibleCongruences(i, j,
                                    "incompatible congruences #" + std::to_string(i) + " (" + describe(congruences[i]) +
                                        ") and #" + std::to_string(j) + " (" + describe(next) + ")");
    }
    // x = r1 + m1 * t, m1 t ≡ diff (mod m2)  =>  t ≡ (diff/g) * (m1/g)^-1 (mod m2/g)
    const mpz_class m1g = acc.modulus() / g;
    const mpz_class m2g = next.modulus() / g;
    const mpz_class t = mod_floor(diff / g * mod_inverse(mod_floor(m1g, m2g), m2g), m2g);
    const mpz_class lcm = acc.modulus() * m2g;
    acc = Congruence(acc.residue() + acc.modulus() * t, lcm);
  }
  return acc;
}

std::optional<Congruence> solve_linear(const mpz_class& a, const mpz_class& b, const mpz_class& n) {
  if (n < 1) throw DomainError("solve_linear: modulus must be positive");
  const mpz_class g = gcd(a, n);
  if (g == 0) return mod_floor(b, n) == 0 ? std::optional(Congruence(0, 1)) : std::nullopt;
  if (mod_floor(b, g) != 0) return std::nullopt;
  const mpz_class ng = n / g;
  const mpz_class ag = mod_floor(a / g, ng);
  const mpz_class bg = b / g;
  return Congruence(-bg * mod_inverse(ag, ng), ng);
}

std::vector<mpz_class> sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
  const mpz_class a = mod_floor(a_in, p);
  if (p == 2) return {a};
  if (a == 0) return {mpz_class(0)};
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return {};

  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

  mpz_class c, r, t, exp = (q + 1) / 2;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long k = 0; k + 1 < m - i; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  mpz_class other = p - r;
  if (other < r) std::swap(r, other);
  return {r, other};
}

std::vector<mpz_class> modular_sqrt(const mpz_class& a, const Factorization& n) {
  if (!n.complete()) throw UnsupportedInput("modular_sqrt: modulus factorization incomplete");
  if (!n.squarefree()) throw UnsupportedInput("modular_sqrt: modulus " + n.value().get_str() + " is not squarefree");
  if (gcd(a, n.value()) != 1) throw UnsupportedInput("modular_sqrt: gcd(a, n) != 1");
  if (n.value() == 1) return {mpz_class(0)};

  std::vector<std::vector<mpz_class>> per_prime;
  for (const auto& pp : n.factors()) {
    auto roots = sqrt_mod_prime(a, pp.prime);
    if (roots.empty()) return {};
    per_prime.push_back(std::move(roots));
  }

  std::vector<mpz_class> out;
  std::vector<std::size_t> choice(per_prime.size(), 0);
  std::vector<Congruence> rows(per_prime.size());
  while (true) {
    for (std::size_t i = 0; i < per_prime.size(); ++i) rows[i] = Congruence(per_prime[i][choice[i]], n.factors()[i].prime);
    out.push_back(crt_solve(rows).residue());
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dioph
