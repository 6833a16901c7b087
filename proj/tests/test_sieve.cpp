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

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"
#include "dioph/sieve.hpp"

using namespace dioph;

namespace {

LinearSystem toy(std::vector<std::vector<long>> polys) {
  LinearSystem sys;
  for (auto& c : polys) {
    CofactorPoly p;
    for (long x : c) p.coeffs.emplace_back(x);
    sys.cofactors.push_back(p);
  }
  return sys;
}

bool rough(const mpz_class& v, std::uint64_t z) {
  if (v == 0) return false;
  for (const auto& pp : factorize(abs(v)).factors()) {
    if (pp.prime <= z) return false;
  }
  return true;
}

std::vector<mpz_class> brute_survivors(const LinearSystem& sys, std::uint64_t z, const SearchRange& range) {
  std::vector<mpz_class> out;
  for (std::uint64_t i = 0; i < range.count; ++i) {
    const mpz_class s = range.start + mpz_class(static_cast<unsigned long>(i));
    bool ok = true;
    for (const auto& poly : sys.cofactors) ok = ok && rough(poly.value(s), z);
    if (ok) out.push_back(s);
  }
  return out;
}

std::uint64_t brute_omega(const LinearSystem& sys, std::uint64_t d) {
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < d; ++s) {
    mpz_class prod = 1;
    for (const auto& poly : sys.cofactors) prod *= poly.value(mpz_class(static_cast<unsigned long>(s)));
    if (mpz_divisible_ui_p(prod.get_mpz_t(), d)) ++count;
  }
  return count;
}

std::vector<mpz_class> survivors_s(const std::vector<Survivor>& v) {
  std::vector<mpz_class> out;
  for (const auto& sv : v) out.push_back(sv.s);
  return out;
}

}  // namespace

TEST(AssembleSystem, Examples) {
  const auto sys = assemble_system({{1, 1, 35}}, 4);
  int brute = -1;
  for (int m = 0; m < 140; ++m) {
    if (m % 4 == 0 && (m + 1) % 35 == 0) brute = m;
  }
  EXPECT_EQ(brute, 104);
  EXPECT_EQ(sys.h(), 104);
  EXPECT_EQ(sys.N(), 140);
  EXPECT_EQ(sys.cofactors[0].value(0), 3);  // 105 / 35
  const auto trivial = assemble_system({{1, 1, 1}}, 4);
  EXPECT_EQ(trivial.solution, Congruence(0, 4));
  EXPECT_THROW(assemble_system({{1, 1, 5}, {2, 2, 7}}, 4), DomainError);
  EXPECT_EQ(sieve_modulus_L(1, {1}), 4);
  EXPECT_EQ(sieve_modulus_L(2, {1, 0, 3}), 144);
}

TEST(AssembleSystem, RowsAndCofactorsHold) {
  // L = (2*2!*1*2)^2 = 64, forms m + 1 (mod 15) and 3m + 2 (mod 7).
  const mpz_class L = sieve_modulus_L(2, {1, 2});
  const auto sys = assemble_system({{1, 1, 15}, {3, 2, 7}}, L);
  for (long s = 0; s < 20; ++s) {
    const mpz_class m = sys.m_at(s);
    EXPECT_EQ(m % L, 0);
    EXPECT_EQ((m + 1) % 15, 0);
    EXPECT_EQ((3 * m + 2) % 7, 0);
    EXPECT_EQ(sys.cofactors[0].value(s) * 15, m + 1);
    EXPECT_EQ(sys.cofactors[1].value(s) * 14, 3 * m + 2);
  }
  // Erdős-style zero b: cofactor m / (L n).
  const auto zero = assemble_system({{1, 0, 9}, {1, 1, 25}}, 4);
  for (long s = 0; s < 5; ++s) EXPECT_EQ(zero.cofactors[0].value(s) * 36, zero.m_at(s));
}

TEST(AssembleQuadratic, Examples) {
  const auto sys = assemble_quadratic(factorize(1), factorize(5));
  std::set<long> brute;
  for (long m = 0; m < 10; ++m) {
    if (m % 2 == 0 && (m * m + 1) % 5 == 0) brute.insert(m);
  }
  EXPECT_EQ(brute, (std::set<long>{2, 8}));
  ASSERT_EQ(sys.all_solutions.size(), 2u);
  EXPECT_EQ(sys.all_solutions[0], Congruence(2, 10));
  EXPECT_EQ(sys.all_solutions[1], Congruence(8, 10));
  EXPECT_THROW(assemble_quadratic(factorize(1), factorize(3)), ConstructionError);
  EXPECT_THROW(assemble_quadratic(factorize(5), factorize(1)), ConstructionError);  // -2 is a non-residue mod 5

  const auto big = assemble_quadratic(factorize(3 * 11), factorize(5 * 13), 3);
  for (long s = 0; s < 10; ++s) {
    const mpz_class m = big.m_at(s);
    EXPECT_EQ(m % 2, 0);
    EXPECT_EQ((m * m + 2) % 33, 0);
    EXPECT_EQ((m * m + 1) % 65, 0);
    EXPECT_EQ(big.cofactors[0].value(s) * 66, m * m + 2);
    EXPECT_EQ(big.cofactors[1].value(s) * 65, m * m + 1);
  }
}

TEST(Omega, Examples) {
  const auto sys = assemble_system({{1, 1, 35}}, 4);
  EXPECT_EQ(omega(sys, 2), 0);
  EXPECT_EQ(omega(sys, 1), 1);
  const auto t = toy({{0, 1}, {1, 2}});
  EXPECT_EQ(omega(t, 3), 2);
  EXPECT_EQ(brute_omega(t, 3), 2u);
}

TEST(Omega, MatchesBruteForceAndIsMultiplicative) {
  const auto sys = toy({{3, 7}, {-5, 4}, {1, 0, 1}});
  std::vector<mpz_class> w(1001);
  for (std::uint64_t d = 1; d <= 1000; ++d) {
    w[d] = omega(sys, mpz_class(static_cast<unsigned long>(d)));
    ASSERT_EQ(w[d], brute_omega(sys, d)) << d;
  }
  for (std::uint64_t a = 1; a <= 40; ++a) {
    for (std::uint64_t b = 1; a * b <= 1000; ++b) {
      if (std::gcd(a, b) == 1) EXPECT_EQ(w[a * b], w[a] * w[b]);
    }
  }
}

TEST(Omega, QuadraticSystemMatchesBruteForce) {
  const auto sys = assemble_quadratic(factorize(3 * 11), factorize(5 * 13));
  for (auto p : sieve_primes(100)) EXPECT_EQ(omega(sys, mpz_class(static_cast<unsigned long>(p))), brute_omega(sys, p)) << p;
}

TEST(RoughSearch, Examples) {
  const auto sys = toy({{1, 2}});
  SieveConfig cfg;
  cfg.z = 5;
  EXPECT_EQ(survivors_s(segmented_rough_search(sys, cfg, {1, 10})), (std::vector<mpz_class>{3, 5, 6, 8, 9}));
  cfg.z = 1;
  EXPECT_EQ(segmented_rough_search(sys, cfg, {1, 10}).size(), 10u);
  EXPECT_TRUE(segmented_rough_search(sys, cfg, {1, 0}).empty());
  cfg.segment_size = kMaxSegmentSize + 1;
  EXPECT_THROW(segmented_rough_search(sys, cfg, {1, 10}), ResourceError);
}

TEST(RoughSearch, PrimeFormAndEarlyStop) {
  const auto sys = toy({{1, 2}});
  SieveConfig cfg;
  cfg.z = 3;
  cfg.require_prime_form = PrimeForm{4, 1};
  const auto got = segmented_rough_search(sys, cfg, {1, 200});
  for (const auto& sv : got) {
    EXPECT_TRUE(is_probable_prime(4 * sv.s + 1));
    EXPECT_TRUE(rough(sv.cofactors[0], 3));
  }
  EXPECT_FALSE(got.empty());
  cfg.max_survivors = 3;
  SearchStats stats;
  EXPECT_EQ(segmented_rough_search(sys, cfg, {1, 200}, &stats).size(), 3u);
  EXPECT_TRUE(stats.stopped_early);
}

TEST(RoughSearch, MatchesBruteForceOnRandomSystems) {
  std::mt19937_64 rng(2024);
  const auto small_primes = sieve_primes(200);
  int built = 0;
  while (built < 50) {
    const std::size_t k = 1 + rng() % 2;
    std::vector<LinearForm> forms;
    std::vector<mpz_class> bs;
    for (std::size_t i = 0; i < k; ++i) {
      const long b = static_cast<long>(rng() % 3) + 1;
      forms.push_back({static_cast<long>(1 + rng() % 3), (rng() % 2 ? b : -b), 1});
      bs.push_back(forms.back().b);
    }
    const mpz_class L = k == 1 ? mpz_class(4 * bs[0] * bs[0]) : sieve_modulus_L(k, bs);
    if (L > 10000) continue;
    // Each modulus a prime above every prime of L and of the a_i.
    for (auto& f : forms) {
      const auto p = small_primes[8 + rng() % 30];
      f.modulus = static_cast<unsigned long>(p);
    }
    LinearSystem sys;
    try {
      sys = assemble_system(forms, L);
    } catch (const Error&) {
      continue;
    }
    if (sys.N() > 10000 * 40) continue;
    ++built;
    SieveConfig cfg;
    cfg.z = 2 + rng() % 49;
    cfg.segment_size = 1 + rng() % 5000;
    cfg.threads = 1 + rng() % 2;
    const SearchRange range{1 + rng() % 100, 10000};
    EXPECT_EQ(survivors_s(segmented_rough_search(sys, cfg, range)), brute_survivors(sys, cfg.z, range)) << "system " << built;
  }
}

TEST(RoughSearch, QuadraticMatchesBruteForce) {
  const auto sys = assemble_quadratic(factorize(3), factorize(5));
  SieveConfig cfg;
  cfg.z = 30;
  cfg.segment_size = 777;
  const SearchRange range{1, 3000};
  EXPECT_EQ(survivors_s(segmented_rough_search(sys, cfg, range)), brute_survivors(sys, cfg.z, range));
}

TEST(RoughSearch, DensityAndDimension) {
  const auto sys = assemble_system({{1, 1, 101}, {1, 2, 103}}, sieve_modulus_L(2, {1, 2}));
  SieveConfig cfg;
  cfg.z = 50;
  const auto got = segmented_rough_search(sys, cfg, {1, 100000});
  const double predicted = mertens_prediction(sys, 50, 100000);
  EXPECT_GT(predicted, 0);
  const double ratio = static_cast<double>(got.size()) / predicted;
  if (ratio < 1.0 / 3 || ratio > 3) ADD_FAILURE() << "density ratio " << ratio;
  const double A = dimension_constant(sys, 50, 2);
  EXPECT_TRUE(std::isfinite(A));
  EXPECT_GE(A, 0);
}

TEST(ChooseParameters, Thresholds) {
  ParameterInput in;
  in.shortcut = true;
  auto c = choose_parameters(in);
  EXPECT_DOUBLE_EQ(c.threshold, 0.45);
  EXPECT_DOUBLE_EQ(c.predicted_c, 0.95 * 0.45);

  in.shortcut = false;
  in.k = 2;
  in.A = 2;
  c = choose_parameters(in);
  EXPECT_DOUBLE_EQ(c.config.beta, 4.2665);
  EXPECT_DOUBLE_EQ(c.threshold, 0.45 / (4 + 0.45 * 4.2665));
  EXPECT_LT(c.predicted_c, c.threshold);
  const double xi = 0.95 * 0.225;
  EXPECT_DOUBLE_EQ(c.config.mu, xi * 4.2665 / (2 * (1 - 0.15)));
  EXPECT_DOUBLE_EQ(c.config.c0, c.config.mu * 0.9 * 0.95 / 4.2665);

  ParameterInput t2;
  t2.variant = SieveVariant::Theorem2PrimeForm;
  c = choose_parameters(t2);
  EXPECT_DOUBLE_EQ(c.threshold, 0.45 / (1 + 4 * 0.45));
  t2.elliott_halberstam = true;
  c = choose_parameters(t2);
  EXPECT_DOUBLE_EQ(c.threshold, 0.45 / (1 + 2 * 0.45));
  EXPECT_LT(c.predicted_c, c.threshold);

  ParameterInput t3;
  t3.variant = SieveVariant::Theorem2;
  t3.k = 3;
  c = choose_parameters(t3);
  EXPECT_EQ(c.config.kappa, 4u);
  EXPECT_TRUE(c.config.beta_placeholder);

  ParameterInput bad;
  bad.epsilon = 0.4;
  EXPECT_THROW(choose_parameters(bad), DomainError);
  bad.epsilon = 0.05;
  bad.xi_prime = 0.5;
  EXPECT_THROW(choose_parameters(bad), DomainError);
}
