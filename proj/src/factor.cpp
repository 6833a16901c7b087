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

#include "dioph/factor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"

namespace dioph {

const mpz_class kDeterministicPrimalityBound("3317044064679887385961981");

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<unsigned, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool witness_u64(u64 n, u64 d, unsigned r, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool witness_mpz(const mpz_class& n, const mpz_class& d, unsigned r, const mpz_class& a) {
  const mpz_class n1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

u64 splitmix(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::optional<u64> brent_u64(u64 n, u64& rng, u64& budget) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    const u64 c = splitmix(rng) % (n - 1) + 1;
    u64 y = splitmix(rng) % n;
    u64 g = 1, q = 1, x = 0, ys = 0;
    const u64 m = 128;
    for (u64 r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        const u64 steps = std::min(m, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        budget = budget > steps ? budget - steps : 0;
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

std::optional<mpz_class> brent_mpz(const mpz_class& n, u64& rng, u64& budget) {
  if (mpz_even_p(n.get_mpz_t())) return mpz_class(2);
  while (budget > 0) {
    mpz_class c = mpz_class(static_cast<unsigned long>(splitmix(rng) >> 1)) % (n - 1) + 1;
    mpz_class y = mpz_class(static_cast<unsigned long>(splitmix(rng) >> 1)) % n;
    mpz_class g = 1, q = 1, x, ys, diff;
    const u64 m = 128;
    for (u64 r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        const u64 steps = std::min(m, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          diff = x - y;
          q = q * abs(diff) % n;
        }
        budget = budget > steps ? budget - steps : 0;
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        diff = x - ys;
        g = gcd(abs(diff), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (unsigned p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (!witness_u64(n, d, r, a)) return false;
  }
  return true;
}

bool is_probable_prime(const mpz_class& n, std::uint64_t seed) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
  for (unsigned p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  unsigned r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }
  if (n < kDeterministicPrimalityBound) {
    for (unsigned a : kWitnesses) {
      if (!witness_mpz(n, d, r, mpz_class(a))) return false;
    }
    return true;
  }
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(mpz_class(static_cast<unsigned long>(seed)) ^ (n % 1000003));
  const mpz_class span = n - 3;
  for (int round = 0; round < 64; ++round) {
    const mpz_class a = rng.get_z_range(span) + 2;
    if (!witness_mpz(n, d, r, a)) return false;
  }
  return true;
}

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
  Factorization f;
  for (auto& pp : factors) f.add_prime(pp.prime, pp.exponent);
  return f;
}

void Factorization::add_prime(const mpz_class& p, unsigned exponent) {
  if (exponent == 0) return;
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), exponent);
  value_ *= power;
  auto it = std::find_if(factors_.begin(), factors_.end(), [&](const PrimePower& pp) { return pp.prime == p; });
  if (it != factors_.end()) {
    it->exponent += exponent;
  } else {
    factors_.push_back({p, exponent});
    normalize();
  }
}

void Factorization::add_unfactored(const mpz_class& c) {
  value_ *= c;
  unfactored_.push_back(c);
  std::sort(unfactored_.begin(), unfactored_.end());
}

void Factorization::normalize() {
  std::sort(factors_.begin(), factors_.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
}

bool Factorization::squarefree() const {
  return complete() && std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

unsigned Factorization::big_omega() const {
  unsigned total = 0;
  for (const auto& pp : factors_) total += pp.exponent;
  return total;
}

Factorization Factorization::operator*(const Factorization& other) const {
  Factorization out = *this;
  for (const auto& pp : other.factors_) out.add_prime(pp.prime, pp.exponent);
  for (const auto& c : other.unfactored_) out.add_unfactored(c);
  return out;
}

mpz_class Factorization::product() const {
  mpz_class out = 1, power;
  for (const auto& pp : factors_) {
    mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= power;
  }
  for (const auto& c : unfactored_) out *= c;
  return out;
}

std::string Factorization::to_string() const {
  if (factors_.empty() && unfactored_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& pp : factors_) {
    if (!first) os << " * ";
    first = false;
    os << pp.prime.get_str();
    if (pp.exponent > 1) os << "^" << pp.exponent;
  }
  for (const auto& c : unfactored_) {
    if (!first) os << " * ";
    first = false;
    os << "(" << c.get_str() << ")";
  }
  return os.str();
}

Factorization factorize(const mpz_class& n, const FactorOptions& options) {
  if (n < 1) throw DomainError("factorize: n must be positive, got " + n.get_str());
  Factorization out;
  if (n == 1) return out;

  mpz_class rest = n;
  auto table = PrimeCache::instance().up_to(options.trial_bound);
  for (u64 p : *table) {
    if (p > options.trial_bound) break;
    if (mpz_fits_ulong_p(rest.get_mpz_t())) {
      const u64 r = rest.get_ui();
      if (p * p > r) break;
      if (r % p) continue;
      unsigned e = 0;
      u64 v = r;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out.add_prime(mpz_class(static_cast<unsigned long>(p)), e);
      rest = static_cast<unsigned long>(v);
      continue;
    }
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.add_prime(mpz_class(static_cast<unsigned long>(p)), e);
  }

  u64 rng = options.seed;
  u64 budget = options.rho_budget;
  std::vector<mpz_class> pending;
  if (rest > 1) pending.push_back(rest);
  while (!pending.empty()) {
    mpz_class c = pending.back();
    pending.pop_back();
    if (c == 1) continue;
    if (is_probable_prime(c, options.seed)) {
      out.add_prime(c, 1);
      continue;
    }
    if (mpz_perfect_power_p(c.get_mpz_t())) {
      const auto bits = static_cast<unsigned long>(mpz_sizeinbase(c.get_mpz_t(), 2));
      bool split = false;
      for (unsigned long k = bits; k >= 2 && !split; --k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k) != 0) {
          for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
          split = true;
        }
      }
      if (split) continue;
    }
    std::optional<mpz_class> d;
    if (c < (mpz_class(1) << 62)) {
      if (auto small = brent_u64(c.get_ui(), rng, budget)) d = mpz_class(static_cast<unsigned long>(*small));
    } else {
      d = brent_mpz(c, rng, budget);
    }
    if (!d) {
      out.add_unfactored(c);
      continue;
    }
    pending.push_back(*d);
    pending.push_back(c / *d);
  }
  return out;
}

}  // namespace dioph
