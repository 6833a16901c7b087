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

#include "dioph/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"

namespace dioph {

namespace {

Real slack() { return Real::two_pow(-(working_precision() - 16)); }

Real one_plus(const Real& xi) { return Real(1) + xi; }

}  // namespace

EtaVerdict check_eta(const Real& eta, const Real& v0, const Real& xi, std::span<const Real> gammas,
                     const std::optional<Real>& xi_prime) {
  EtaVerdict verdict;
  if (eta.sign() <= 0) verdict.violations.push_back("eta must be positive");
  if (!(eta < v0)) verdict.violations.push_back("eta = " + eta.to_string(10) + " is not below v0 = " + v0.to_string(10));
  const Real six_bound = pow(Real(6), -Real(1) / xi);
  if (!(eta < six_bound)) {
    verdict.violations.push_back("eta = " + eta.to_string(10) + " is not below 6^(-1/xi) = " + six_bound.to_string(10));
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(eta < gammas[i])) {
      verdict.violations.push_back("eta is not below gamma_" + std::to_string(i + 1) + " = " + gammas[i].to_string(10));
    }
  }
  if (xi_prime) {
    const Real lhs = pow(eta / Real(2), *xi_prime);
    const Real rhs = pow(eta, xi);
    if (!(lhs > rhs)) {
      verdict.violations.push_back("(eta/2)^xi' = " + lhs.to_string(10) + " is not above eta^xi = " + rhs.to_string(10));
    }
  }
  return verdict;
}

PrimePool PrimePool::from_partition(const PrimePartition& partition, std::uint64_t limit) {
  PrimePool pool;
  pool.floor = partition.residual_floor;
  pool.limit = limit;
  for (const auto& s : partition.sets) pool.excluded.insert(s.begin(), s.end());
  return pool;
}

Factorization build_base(const AdditiveFunction& f, const Real& gamma, const Real& eta, const PrimePool& pool,
                         const std::set<mpz_class>& forbidden) {
  if (!(gamma > eta)) throw DomainError("build_base needs gamma > eta");
  const Real low = gamma - eta;
  const Real high = gamma - eta / Real(2);
  const auto& filter = f.residue_filter();
  Real sum;
  std::vector<mpz_class> chosen;

  auto offer = [&](const mpz_class& p, const Real& value) {
    if (value.sign() <= 0) return;
    if (sum + value < high) {
      sum += value;
      chosen.push_back(p);
    }
  };
  auto usable = [&](const mpz_class& p) {
    return p > pool.floor && !pool.excluded.count(p) && !forbidden.count(p) && (!filter || filter->admits(p));
  };

  if (pool.explicit_primes) {
    std::vector<std::pair<Real, mpz_class>> ranked;
    for (const auto& p : *pool.explicit_primes) {
      if (usable(p)) ranked.emplace_back(f.prime_value(p), p);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [value, p] : ranked) {
      if (sum > low) break;
      offer(p, value);
    }
  } else {
    // Ascending primes; f decreasing from monotone_from on, so the few small primes
    // before it are ranked explicitly first.
    const std::uint64_t start = pool.floor.fits_ulong_p() ? pool.floor.get_ui() + 1 : pool.limit + 1;
    std::vector<std::pair<Real, mpz_class>> head;
    std::uint64_t tail_start = std::max<std::uint64_t>(start, f.monotone_from());
    for (std::uint64_t p = start; p < tail_start && p <= pool.limit; ++p) {
      const mpz_class mp(static_cast<unsigned long>(p));
      if (is_prime_u64(p) && usable(mp)) head.emplace_back(f.prime_value(mp), mp);
    }
    std::stable_sort(head.begin(), head.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [value, p] : head) {
      if (sum > low) break;
      offer(p, value);
    }
    if (!(sum > low) && tail_start <= pool.limit) {
      // f(x, 1) decreases here, so a run of primes that all overshoot `high` is jumped:
      // resume at the first x with f(x) < high - sum.
      auto first_below = [&](std::uint64_t from, const Real& t) {
        std::uint64_t lo = from, step = std::max<std::uint64_t>(from, 16);
        std::uint64_t hi = from;
        while (true) {
          hi = lo + step > pool.limit ? pool.limit + 1 : lo + step;
          if (hi > pool.limit || f.prime_value(mpz_class(static_cast<unsigned long>(hi))) < t) break;
          lo = hi;
          step *= 2;
        }
        while (hi - lo > 1) {  // f(lo) >= t, answer in (lo, hi]
          const std::uint64_t mid = lo + (hi - lo) / 2;
          (f.prime_value(mpz_class(static_cast<unsigned long>(mid))) < t ? hi : lo) = mid;
        }
        return hi;
      };
      std::optional<PrimeIterator> it(std::in_place, tail_start, pool.limit);
      int overshoots = 0;
      for (std::uint64_t p = it->next(); p && !(sum > low); p = it->next()) {
        const mpz_class mp(static_cast<unsigned long>(p));
        if (!usable(mp)) continue;
        const Real value = f.prime_value(mp);
        const bool overshoot = value.sign() > 0 && !(sum + value < high);
        if (overshoot && ++overshoots >= 8) {
          overshoots = 0;
          // land slightly early; the exact test above decides the borderline primes
          const Real t = high - sum;
          const std::uint64_t next = first_below(p, t + t * Real::two_pow(-(working_precision() - 8)));
          if (next > pool.limit) break;
          if (next > p + 1) it.emplace(next, pool.limit);
          continue;
        }
        if (!overshoot) overshoots = 0;
        offer(mp, value);
      }
    }
  }
  if (!(sum > low)) {
    throw ConstructionError(f.name() + ": prime pool exhausted (limit " + std::to_string(pool.limit) +
                            ") building a base; reached " + sum.to_string(12) + ", deficit " + (low - sum).to_string(12) +
                            " below gamma - eta");
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<PrimePower> factors;
  for (auto& p : chosen) factors.push_back({p, 1});
  return Factorization::from_factors(std::move(factors));
}

GreedyState start_state(const AdditiveFunction& f, const Real& gamma, const Real& eta, const Real& xi, Factorization base) {
  GreedyState s{f, gamma, eta, xi, std::move(base), 1, Real(), {}, {}};
  s.n = s.base.value();
  s.tau = Real::sub(gamma, eval(f, s.base), Round::Up);
  for (const auto& pp : s.base.factors()) s.used.insert(pp.prime);
  return s;
}

void refine_step(GreedyState& state, std::span<const mpz_class> column) {
  if (state.tau.sign() <= 0) throw DomainError("refine_step needs tau > 0");
  const Real& tau = state.tau;
  const Real step = pow(tau, one_plus(state.xi));
  const Real hi = tau - step;
  const Real lo = tau - Real(3) * step;
  std::optional<mpz_class> best;
  Real best_value;
  for (const auto& p : column) {
    if (state.used.count(p)) continue;
    const Real value = state.function.prime_value(p);
    if (lo < value && value <= hi && (!best || value > best_value)) {
      best = p;
      best_value = value;
    }
  }
  if (!best) {
    throw ConstructionError(state.function.name() + ": no partition prime with f-value in (" + lo.to_string(12) + ", " +
                            hi.to_string(12) + "] at step j = " + std::to_string(state.j() + 1) +
                            "; the ladder is too shallow or the parameters violate the window conditions");
  }
  const Real new_tau = Real::sub(tau, best_value, Round::Up);
  if (new_tau < step || !(new_tau < Real(3) * step)) {
    throw ConstructionError("tau recursion violated at step " + std::to_string(state.j() + 1));
  }
  state.n *= *best;
  state.used.insert(*best);
  state.chain.push_back(ChainStep{*best, new_tau});
  state.tau = new_tau;
}

Real error_bound(const Real& eta, const Real& xi, std::size_t j) {
  // eta < 1: a smaller exponent gives a larger bound.
  const Real e_down = Real::pow(one_plus(xi), Real(static_cast<long>(j)), Round::Down);
  return Real::mul(Real::pow(Real(3), Real(static_cast<long>(j)), Round::Up), Real::pow(eta, e_down, Round::Up), Round::Up);
}

mpz_class size_bound(const AdditiveFunction& f, const mpz_class& n0, const Real& eta, const Real& xi, std::size_t j) {
  const Real delta(f.delta());
  const Real jr(static_cast<long>(j));
  const Real growth = Real::pow(Real(2) * Real(f.C()), Real::div(jr, delta, Round::Up), Round::Up);
  const Real e = Real::div(Real::pow(one_plus(xi), jr, Round::Up), Real::mul(delta, xi, Round::Down), Round::Up);
  const Real denom = Real::pow(Real::div(eta, Real(2), Round::Down), e, Round::Down);
  const Real bound = Real::div(Real::mul(growth, Real(n0), Round::Up), denom, Round::Up);
  return bound.ceil();
}

bool ModulusSequence::certified() const {
  return std::all_of(snapshots.begin(), snapshots.end(), [](const Snapshot& s) { return s.certified(); });
}

ModulusSequence certify_chain(const GreedyState& state, std::size_t function) {
  ModulusSequence seq;
  seq.function = function;
  const Real tol = slack();
  const auto& f = state.function;
  const mpz_class n0 = state.base.value();
  mpz_class n = n0;
  Real previous_tau;
  for (std::size_t j = 0; j <= state.chain.size(); ++j) {
    if (j > 0) n *= state.chain[j - 1].prime;
    Snapshot s;
    s.j = j;
    s.n = n;
    s.factorization = factorize(n);
    s.value = eval(f, s.factorization);
    s.tau = state.gamma - s.value;
    s.error_bound = error_bound(state.eta, state.xi, j);
    s.error_ok = abs(s.tau) <= s.error_bound + tol;
    if (j == 0) {
      s.tau_ok = s.tau > state.eta / Real(2) - tol && s.tau < state.eta + tol;
    } else {
      const Real step = pow(previous_tau, one_plus(state.xi));
      s.tau_ok = s.tau >= step - tol && s.tau < Real(3) * step + tol;
    }
    s.size_bound = size_bound(f, n0, state.eta, state.xi, j);
    s.size_ok = n <= s.size_bound;
    if (j > 0) seq.snapshots.back().divides_next = mpz_divisible_p(n.get_mpz_t(), seq.snapshots.back().n.get_mpz_t()) != 0;
    previous_tau = s.tau;
    seq.snapshots.push_back(std::move(s));
  }
  return seq;
}

std::uint64_t base_pool_limit(const AdditiveFunction& f, const Real& eta) {
  const double reach = std::pow(2.0 * f.C() / eta.to_double(), 1.0 / f.delta());
  const double limit = std::clamp(8.0 * reach, 1e8, 0x1p40);
  return static_cast<std::uint64_t>(limit);
}

ModulusSequence construct_sequence(const AdditiveFunction& f, const Real& gamma, const Real& eta, const PrimePartition& partition,
                                   std::size_t i, std::size_t J, const std::set<mpz_class>& forbidden,
                                   std::uint64_t pool_limit) {
  if (i >= partition.sets.size()) throw DomainError("construct_sequence: no partition column " + std::to_string(i));
  auto pool = PrimePool::from_partition(partition, pool_limit ? pool_limit : base_pool_limit(f, eta));
  GreedyState state = start_state(f, gamma, eta, partition.ladder.xi, build_base(f, gamma, eta, pool, forbidden));
  for (std::size_t j = 0; j < J; ++j) refine_step(state, partition.sets[i]);
  return certify_chain(state, i);
}

std::vector<ModulusSequence> construct_all(const PartitionRequest& request, std::span<const Real> gammas, const Real& eta,
                                           const PrimePartition& partition, std::size_t J, std::uint64_t pool_limit) {
  if (gammas.size() != request.k()) throw DomainError("construct_all: need one gamma per function");
  std::vector<ModulusSequence> out;
  std::set<mpz_class> forbidden;
  for (std::size_t i = 0; i < request.k(); ++i) {
    out.push_back(construct_sequence(request.functions[i], gammas[i], eta, partition, i, J, forbidden, pool_limit));
    for (const auto& pp : out.back().snapshots.front().factorization.factors()) forbidden.insert(pp.prime);
  }
  return out;
}

std::size_t required_ladder_depth(const Real& v0, const Real& xi, const Real& eta, std::size_t J) {
  const std::size_t last = J == 0 ? 0 : J - 1;
  const Real tau_min = pow(eta / Real(2), pow(one_plus(xi), Real(static_cast<long>(last))));
  const Real target = tau_min / Real(4);
  constexpr std::size_t kMaxDepth = 1'000'000;
  extend_ladder(v0, xi, 0);  // validates v0 and xi
  Real v = v0;
  const Real e = one_plus(xi);
  for (std::size_t d = 0; d < kMaxDepth; ++d) {
    v = v - pow(v, e);
    if (v < target) return d;
  }
  throw ResourceError("ladder would need more than " + std::to_string(kMaxDepth) + " levels to reach " + target.to_string(6));
}

long required_precision(const Real& eta, const Real& xi, std::size_t J) {
  const double growth = std::pow(1.0 + xi.to_double(), static_cast<double>(J));
  const double bits = growth * std::log2(2.0 / eta.to_double());
  return std::max<long>(kDefaultPrecisionBits, static_cast<long>(std::ceil(bits)) + 96);
}

}  // namespace dioph
