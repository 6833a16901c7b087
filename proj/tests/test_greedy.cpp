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

#include <cmath>
#include <random>

#include "dioph/errors.hpp"
#include "dioph/greedy.hpp"
#include "dioph/primes.hpp"

using namespace dioph;

namespace {

std::vector<mpz_class> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<mpz_class> out;
  for (auto p : sieve_primes(hi)) {
    if (p >= lo) out.emplace_back(static_cast<unsigned long>(p));
  }
  return out;
}

// Independent greedy over doubles: visit in the given order, take p when the running
// sum stays below hi, stop once above lo.
// totient_log by default, sigma_log (log((p+1)/p)) when `sigma`.
std::vector<unsigned long> simulate_base(const std::vector<unsigned long>& order, double gamma, double eta, bool sigma = false) {
  double sum = 0;
  std::vector<unsigned long> out;
  for (auto p : order) {
    if (sum > gamma - eta) break;
    const double v = sigma ? std::log1p(1.0 / p) : std::log(static_cast<double>(p) / (p - 1));
    if (sum + v < gamma - eta / 2) {
      sum += v;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<unsigned long> as_ulong(const Factorization& f) {
  std::vector<unsigned long> out;
  for (const auto& pp : f.factors()) out.push_back(pp.prime.get_ui());
  return out;
}

}  // namespace

TEST(CheckEta, Examples) {
  std::vector<Real> gamma{Real(1)};
  EXPECT_TRUE(check_eta(Real(0.1), Real(0.5), Real(1), gamma).pass());
  std::vector<Real> tight{Real(0.1)};
  EXPECT_FALSE(check_eta(Real(0.1), Real(0.5), Real(1), tight).pass());
  const auto quarter = check_eta(Real(0.01), Real(0.5), Real(0.25), gamma);
  ASSERT_FALSE(quarter.pass());
  EXPECT_NE(quarter.violations.front().find("6^(-1/xi)"), std::string::npos);
  EXPECT_NEAR(std::pow(6.0, -4.0), 0.00077, 1e-5);
  // (eta/2)^xi' vs eta^xi at eta = 0.1, xi = 1: 0.05^0.5 = 0.224 > 0.1, 0.05^0.9 = 0.067 < 0.1.
  EXPECT_TRUE(check_eta(Real(0.1), Real(0.5), Real(1), gamma, Real(0.5)).pass());
  EXPECT_FALSE(check_eta(Real(0.1), Real(0.5), Real(1), gamma, Real(0.9)).pass());
}

TEST(BuildBase, IncludesLargestPrimesThenFills) {
  const auto f = builtin("totient_log");
  const double eta = 0.02;
  const double gamma = std::log(5.0 / 4) + std::log(7.0 / 6) + 1.7 * eta;
  PrimePool pool;
  pool.explicit_primes = primes_between(5, 500);
  const auto base = build_base(f, Real(gamma), Real(eta), pool);
  std::vector<unsigned long> order;
  for (const auto& p : *pool.explicit_primes) order.push_back(p.get_ui());
  EXPECT_EQ(as_ulong(base), simulate_base(order, gamma, eta));
  EXPECT_EQ(as_ulong(base)[0], 5u);
  EXPECT_EQ(as_ulong(base)[1], 7u);
  EXPECT_GT(base.factors().size(), 2u);
  const Real value = eval(f, base);
  EXPECT_GT(value, Real(gamma) - Real(eta));
  EXPECT_LT(value, Real(gamma) - Real(eta) / Real(2));
  EXPECT_TRUE(base.squarefree());
}

TEST(BuildBase, SkipsOvershootingPrimes) {
  const auto f = builtin("totient_log");
  PrimePool pool;
  pool.floor = 4;
  pool.limit = 5000;
  const auto base = build_base(f, Real(0.1), Real(0.01), pool);
  std::vector<unsigned long> order;
  for (auto p : sieve_primes(5000)) {
    if (p > 4) order.push_back(p);
  }
  EXPECT_EQ(as_ulong(base), simulate_base(order, 0.1, 0.01));
  EXPECT_EQ(as_ulong(base).front(), 13u);
  EXPECT_GT(eval(f, base), Real(0.09));
  EXPECT_LT(eval(f, base), Real(0.095));
}

TEST(BuildBase, LongOvershootRunsMatchPlainScan) {
  // the gaps here force runs of thousands of overshooting primes, which the scan jumps
  const auto f = builtin("sigma_log");
  PrimePool pool;
  pool.floor = 27;
  pool.limit = 2'000'000;
  const auto base = build_base(f, Real(0.31), Real(2e-5), pool);
  std::vector<unsigned long> order;
  for (auto p : sieve_primes(2'000'000)) {
    if (p > 27) order.push_back(p);
  }
  EXPECT_EQ(as_ulong(base), simulate_base(order, 0.31, 2e-5, true));
}

TEST(BuildBase, DefaultLimitFollowsEta) {
  const auto f = builtin("sigma_log");
  EXPECT_EQ(base_pool_limit(f, Real(0.01)), 100'000'000u);
  EXPECT_GE(base_pool_limit(f, Real(3.7e-9)), 8'000'000'000u);
  PrimePool pool;
  pool.floor = 27;
  pool.limit = base_pool_limit(f, Real(3.7e-9));
  const auto base = build_base(f, Real(0.25837), Real(3.7e-9), pool);
  EXPECT_GT(base.factors().back().prime, 100'000'000);
  const Real value = eval(f, base);
  EXPECT_GT(value, Real(0.25837) - Real(3.7e-9));
  EXPECT_LT(value, Real(0.25837) - Real(3.7e-9) / Real(2));
}

TEST(BuildBase, Errors) {
  const auto f = builtin("sigma_log");
  PrimePool pool;
  pool.explicit_primes = primes_between(2, 100);
  std::set<mpz_class> all(pool.explicit_primes->begin(), pool.explicit_primes->end());
  EXPECT_THROW(build_base(f, Real(0.5), Real(0.01), pool, all), ConstructionError);
  PrimePool small;
  small.floor = 100;
  small.limit = 200;
  EXPECT_THROW(build_base(f, Real(2), Real(0.01), small), ConstructionError);
  EXPECT_THROW(build_base(f, Real(0.01), Real(0.01), small), DomainError);
}

TEST(RefineStep, Examples) {
  const auto f = builtin("totient_log");
  const auto column = primes_between(2, 1000);
  GreedyState s = start_state(f, Real::from_string("0.04"), Real(0.05), Real(0.5), Factorization::from_factors({}));
  refine_step(s, column);
  EXPECT_EQ(s.chain.back().prime, 37);
  EXPECT_GE(s.tau, Real::from_string("0.008"));
  EXPECT_LT(s.tau, Real::from_string("0.024"));
  EXPECT_LT(abs(eval(f, s.n) - f.prime_value(37)), Real::two_pow(-240));

  GreedyState t = start_state(f, Real(0.25), Real(0.3), Real(1), factorize(1));
  refine_step(t, column);
  EXPECT_EQ(t.chain.back().prime, 7);
  EXPECT_GE(t.tau, Real(0.0625));
  EXPECT_LT(t.tau, Real(0.1875));
  const Real before = eval(f, t.n);
  const mpz_class p = t.chain.back().prime;
  refine_step(t, column);
  EXPECT_LT(abs(eval(f, t.n) - before - f.prime_value(t.chain.back().prime)), Real::two_pow(-240));
  EXPECT_NE(t.chain.back().prime, p);

  std::vector<mpz_class> empty;
  EXPECT_THROW(refine_step(t, empty), ConstructionError);
}

namespace {

struct Setup {
  PartitionRequest request;
  PrimePartition partition;
  Real eta;
};

Setup make_setup(std::size_t k, double v0, std::size_t J) {
  const Real xi(0.2);
  const Real eta(1e-4);
  const std::size_t depth = required_ladder_depth(Real(v0), xi, eta, J);
  auto request = make_request(std::vector<AdditiveFunction>(k, builtin("totient_log")), mpz_class(1), depth, xi);
  auto partition = build_partition(request, Real(v0));
  return Setup{request, partition, eta};
}

void expect_certified(const ModulusSequence& seq, std::size_t J) {
  ASSERT_EQ(seq.snapshots.size(), J + 1);
  for (const auto& s : seq.snapshots) {
    EXPECT_TRUE(s.error_ok) << "j=" << s.j;
    EXPECT_TRUE(s.tau_ok) << "j=" << s.j;
    EXPECT_TRUE(s.size_ok) << "j=" << s.j;
    EXPECT_TRUE(s.divides_next) << "j=" << s.j;
  }
  EXPECT_TRUE(seq.certified());
}

}  // namespace

TEST(ConstructSequence, DepthZeroIsBase) {
  const auto setup = make_setup(1, 0.05, 0);
  const auto seq = construct_sequence(builtin("totient_log"), Real(0.7), setup.eta, setup.partition, 0, 0);
  expect_certified(seq, 0);
  EXPECT_LT(abs(seq.snapshots[0].tau), setup.eta);
}

TEST(ConstructSequence, CertifiedChain) {
  const auto setup = make_setup(1, 0.05, 3);
  EXPECT_TRUE(setup.partition.verdict.pass());
  for (double gamma : {0.3, 0.6931, 1.2}) {
    const auto seq = construct_sequence(builtin("totient_log"), Real(gamma), setup.eta, setup.partition, 0, 3);
    expect_certified(seq, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(seq.snapshots[j + 1].n % seq.snapshots[j].n, 0);
    }
  }
}

TEST(ConstructAll, IdenticalFunctionsCoprime) {
  const auto setup = make_setup(2, 0.003, 3);
  std::vector<Real> gammas{Real(0.5), Real(0.9)};
  const auto chains = construct_all(setup.request, gammas, setup.eta, setup.partition, 3);
  ASSERT_EQ(chains.size(), 2u);
  for (const auto& c : chains) expect_certified(c, 3);
  for (std::size_t j = 0; j <= 3; ++j) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), chains[0].snapshots[j].n.get_mpz_t(), chains[1].snapshots[j].n.get_mpz_t());
    EXPECT_EQ(g, 1) << "j=" << j;
  }
}

TEST(Helpers, BoundsAndDepth) {
  EXPECT_EQ(error_bound(Real(0.1), Real(1), 0), Real(0.1));
  EXPECT_NEAR(error_bound(Real(0.1), Real(1), 2).to_double(), 9e-4, 1e-15);
  // (2*2)^1 * 10 / (0.05)^(2/1) = 16000
  EXPECT_EQ(size_bound(builtin("totient_log"), 10, Real(0.1), Real(1), 1), 16000);
  EXPECT_GE(required_precision(Real(1e-4), Real(1), 6), 256);
  EXPECT_GT(required_precision(Real(1e-4), Real(1), 8), 256 + 3000);
  const std::size_t d = required_ladder_depth(Real(0.05), Real(0.2), Real(1e-4), 3);
  const auto ladder = extend_ladder(Real(0.05), Real(0.2), d + 1);
  EXPECT_LT(ladder[d + 1], pow(Real(5e-5), Real(1.44)) / Real(4));
  EXPECT_GE(ladder[d], pow(Real(5e-5), Real(1.44)) / Real(4));
}
