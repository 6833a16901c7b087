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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dioph/congruence.hpp"
#include "dioph/errors.hpp"
#include "dioph/factor.hpp"
#include "dioph/primes.hpp"

using namespace dioph;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> brute_roots(std::int64_t a, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  const std::int64_t target = ((a % static_cast<std::int64_t>(n)) + n) % n;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (static_cast<std::int64_t>(x * x % n) == target) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(SievePrimes, SmallLimits) {
  EXPECT_EQ(sieve_primes(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(sieve_primes(2), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(sieve_primes(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(SievePrimes, AgreesWithTrialDivision) {
  auto primes = sieve_primes(20000);
  std::set<std::uint64_t> set(primes.begin(), primes.end());
  for (std::uint64_t n = 0; n <= 20000; ++n) EXPECT_EQ(set.count(n) == 1, trial_prime(n)) << n;
}

TEST(SievePrimes, Errors) {
  EXPECT_THROW(sieve_primes(1), DomainError);
  EXPECT_THROW(sieve_primes(kMaxSieveLimit + 1), ResourceError);
}

TEST(PrimeIterator, MatchesSieve) {
  auto primes = sieve_primes(100000);
  PrimeIterator it(50000, 100000, 4096);
  std::vector<std::uint64_t> got;
  for (std::uint64_t p = it.next(); p; p = it.next()) got.push_back(p);
  std::vector<std::uint64_t> want;
  for (auto p : primes) {
    if (p >= 50000) want.push_back(p);
  }
  EXPECT_EQ(got, want);
}

TEST(Primality, MatchesTrialDivisionBelow100k) {
  for (std::uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(is_probable_prime(mpz_class(n)), trial_prime(n)) << n;
}

TEST(Primality, KnownHardCases) {
  EXPECT_FALSE(is_probable_prime(561));
  EXPECT_FALSE(is_probable_prime(mpz_class("3215031751")));        // strong pseudoprime to 2,3,5,7
  EXPECT_FALSE(is_probable_prime(mpz_class("3825123056546413051")));  // strong pseudoprime to bases <= 23
  EXPECT_TRUE(is_probable_prime(mpz_class("170141183460469231731687303715884105727")));  // 2^127-1
  EXPECT_FALSE(is_probable_prime((mpz_class(1) << 128) + 1));
  EXPECT_TRUE(is_probable_prime(mpz_class("1000000000000000000000000000057")));
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_EQ(factorize(360).factors(), (std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}}));
  ASSERT_TRUE(trial_prime(1000003));
  EXPECT_EQ(factorize(1000003).factors(), (std::vector<PrimePower>{{1000003, 1}}));
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, RandomReconstructs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000'000);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = dist(rng);
    const auto f = factorize(mpz_class(n));
    ASSERT_TRUE(f.complete());
    EXPECT_EQ(f.product(), mpz_class(n));
    EXPECT_EQ(f.value(), mpz_class(n));
    for (std::size_t k = 0; k < f.factors().size(); ++k) {
      EXPECT_TRUE(trial_prime(f.factors()[k].prime.get_ui()));
      if (k) EXPECT_LT(f.factors()[k - 1].prime, f.factors()[k].prime);
    }
  }
}

TEST(Factorize, RhoSplitsBeyondTrialBound) {
  const mpz_class p("1000000007"), q("998244353"), r("2305843009213693951");  // r = 2^61-1
  const auto f = factorize(p * p * q * r);
  ASSERT_TRUE(f.complete());
  EXPECT_EQ(f.factors(), (std::vector<PrimePower>{{q, 1}, {p, 2}, {r, 1}}));
  const auto g = factorize(mpz_class("1000000016000000063"));  // 1000000007 * 1000000009
  ASSERT_TRUE(g.complete());
  EXPECT_EQ(g.factors().size(), 2u);
}

TEST(Factorize, BudgetExhaustionFlagsIncomplete) {
  const mpz_class p("1152921504606847009"), q("1152921504606847067");
  ASSERT_TRUE(is_probable_prime(p));
  ASSERT_TRUE(is_probable_prime(q));
  FactorOptions tight;
  tight.rho_budget = 100;
  const auto f = factorize(6 * p * q, tight);
  EXPECT_FALSE(f.complete());
  ASSERT_EQ(f.unfactored().size(), 1u);
  EXPECT_EQ(f.unfactored()[0], p * q);
  EXPECT_EQ(f.value(), 6 * p * q);
  EXPECT_EQ(f.product(), 6 * p * q);
}

TEST(Crt, Examples) {
  std::vector<Congruence> rows{{0, 4}, {2, 3}};
  // brute force over 0..11
  int expect = -1;
  for (int x = 0; x < 12; ++x) {
    if (x % 4 == 0 && x % 3 == 2) expect = x;
  }
  EXPECT_EQ(expect, 8);
  EXPECT_EQ(crt_solve(rows), Congruence(8, 12));
  std::vector<Congruence> identity{{0, 1}};
  EXPECT_EQ(crt_solve(identity), Congruence(0, 1));
}

TEST(Crt, ParityConflictNamesPair) {
  std::vector<Congruence> rows{{1, 3}, {0, 2}, {1, 2}};
  try {
    crt_solve(rows);
    FAIL() << "expected incompatibility";
  } catch (const IncompatibleCongruences& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
  }
  EXPECT_THROW(crt_solve(std::span<const Congruence>{}), DomainError);
}

TEST(Crt, NonCoprimeCompatible) {
  std::vector<Congruence> rows{{2, 6}, {5, 9}, {2, 4}};
  const auto c = crt_solve(rows);
  EXPECT_EQ(c.modulus(), 36);
  for (const auto& row : rows) EXPECT_TRUE(row.satisfied_by(c.residue()));
}

TEST(Crt, RandomCoprimeUniqueByBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<unsigned> moduli;
    unsigned product = 1;
    while (moduli.size() < 3) {
      unsigned m = 2 + rng() % 40;
      bool ok = product * m <= 100000;
      for (unsigned e : moduli) ok = ok && std::gcd(e, m) == 1;
      if (!ok) break;
      moduli.push_back(m);
      product *= m;
    }
    std::vector<Congruence> rows;
    for (unsigned m : moduli) rows.emplace_back(rng() % m, m);
    const auto sol = crt_solve(rows);
    ASSERT_EQ(sol.modulus(), product);
    int count = 0;
    for (unsigned x = 0; x < product; ++x) {
      bool all = true;
      for (const auto& r : rows) all = all && r.satisfied_by(x);
      if (all) {
        ++count;
        EXPECT_EQ(sol.residue(), x);
      }
    }
    EXPECT_EQ(count, 1);
  }
}

TEST(SolveLinear, Basic) {
  // 3x + 1 ≡ 0 (mod 7) -> x ≡ 2
  EXPECT_EQ(*solve_linear(3, 1, 7), Congruence(2, 7));
  // 2x + 1 ≡ 0 (mod 4) has no solution
  EXPECT_FALSE(solve_linear(2, 1, 4).has_value());
  // 2x + 2 ≡ 0 (mod 4) -> x ≡ 1 (mod 2)
  EXPECT_EQ(*solve_linear(2, 2, 4), Congruence(1, 2));
}

TEST(ModularSqrt, Examples) {
  EXPECT_EQ(modular_sqrt(-1, factorize(5)), (std::vector<mpz_class>{2, 3}));
  EXPECT_EQ(modular_sqrt(-1, factorize(13)), (std::vector<mpz_class>{5, 8}));
  EXPECT_TRUE(modular_sqrt(-1, factorize(3)).empty());
  EXPECT_THROW(modular_sqrt(-1, factorize(25)), UnsupportedInput);
  EXPECT_THROW(modular_sqrt(3, factorize(15)), UnsupportedInput);
}

TEST(ModularSqrt, MatchesBruteForceOnSquarefree) {
  for (std::uint64_t n = 1; n <= 400; n += 2) {
    const auto f = factorize(mpz_class(n));
    if (!f.squarefree()) continue;
    for (std::int64_t a : {-1, -2, 2, 3}) {
      if (std::gcd<std::uint64_t>(static_cast<std::uint64_t>(std::abs(a)), n) != 1) continue;
      auto roots = modular_sqrt(a, f);
      std::vector<std::uint64_t> got;
      for (auto& r : roots) got.push_back(r.get_ui());
      EXPECT_EQ(got, brute_roots(a, n)) << "a=" << a << " n=" << n;
      std::size_t per_prime = 1;
      for (const auto& pp : f.factors()) per_prime *= brute_roots(a, pp.prime.get_ui()).size();
      EXPECT_EQ(roots.size(), per_prime);
    }
  }
}

TEST(ModularSqrt, LargePrimeTonelliShanks) {
  const mpz_class p("1000000000000000000000000000057");
  for (long a : {2L, 3L, 5L, 7L, -1L}) {
    for (const auto& r : sqrt_mod_prime(a, p)) {
      mpz_class check = (r * r - a) % p;
      EXPECT_EQ(check, 0);
    }
  }
}
