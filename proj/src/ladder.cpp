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

#include "dioph/ladder.hpp"

#include <algorithm>
#include <limits>

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"

namespace dioph {

void IntervalLadder::extend_to(std::size_t J) {
  const Real exponent = Real(1) + xi;
  if (values.empty()) values.push_back(v0);
  values.reserve(J + 1);
  while (values.size() < J + 1) {
    const Real& v = values.back();
    values.push_back(v - pow(v, exponent));
  }
}

IntervalLadder extend_ladder(const Real& v0, const Real& xi, std::size_t J) {
  if (!(v0.sign() > 0 && v0 < Real(1))) throw DomainError("ladder needs 0 < v0 < 1, got v0 = " + v0.to_string(10));
  if (xi.sign() <= 0) throw DomainError("ladder needs xi > 0");
  IntervalLadder ladder{v0, xi, {}};
  ladder.extend_to(J);
  return ladder;
}

double PartitionRequest::lambda_min() const {
  double lam = std::numeric_limits<double>::infinity();
  for (const auto& f : functions) lam = std::min(lam, f.lambda());
  return lam;
}

PartitionRequest make_request(std::vector<AdditiveFunction> functions, const mpz_class& K, std::size_t J, const Real& xi) {
  if (functions.empty()) throw DomainError("partition request needs at least one function");
  if (K < 1) throw DomainError("K must be a positive integer");
  PartitionRequest r;
  r.A = 1;
  for (const auto& f : functions) {
    if (!f.same_rule(functions.front())) r.A = 2;
  }
  r.functions = std::move(functions);
  r.K = K;
  r.J = J;
  r.xi = xi;
  const Real bound = Real(r.lambda_min()) / Real(r.A);
  if (!(xi.sign() > 0 && xi < bound)) {
    throw DomainError("need 0 < xi < lambda_min / A = " + bound.to_string(10) + ", got xi = " + xi.to_string(10));
  }
  return r;
}

V0Verdict check_v0(const PartitionRequest& request, const Real& v0) {
  V0Verdict verdict;
  if (!(v0.sign() > 0 && v0 < Real(1))) {
    verdict.violations.push_back("v0 must lie in (0, 1)");
    return verdict;
  }
  double t0_min = std::numeric_limits<double>::infinity();
  for (const auto& f : request.functions) t0_min = std::min(t0_min, f.t0());
  if (!(v0 < Real(t0_min))) verdict.violations.push_back("(v0a) v0 = " + v0.to_string(10) + " is not below min t0 = " + Real(t0_min).to_string(10));

  if (request.K >= 2) {
    if (!request.K.fits_ulong_p() || request.K.get_ui() > kMaxSieveLimit) {
      throw ResourceError("K = " + request.K.get_str() + " is too large to scan the primes below it");
    }
    const auto primes_ptr = PrimeCache::instance().up_to(request.K.get_ui());
    const auto& primes = *primes_ptr;
    for (std::size_t i = 0; i < request.functions.size(); ++i) {
      const auto& f = request.functions[i];
      for (std::uint64_t p : primes) {
        if (p > request.K.get_ui()) break;
        const Real value = f.prime_value(mpz_class(static_cast<unsigned long>(p)));
        if (value.sign() > 0 && !(v0 < value)) {
          verdict.violations.push_back("(v0b) v0 is not below f_" + std::to_string(i + 1) + "(" + std::to_string(p) +
                                       ") = " + value.to_string(10));
          break;
        }
      }
    }
  }

  const Real k(static_cast<long>(request.k()));
  const Real gap = request.xi - Real(request.lambda_min());
  if (request.A == 1) {
    const Real lhs = pow(v0, gap);
    if (lhs < Real(2) * k) {
      verdict.violations.push_back("(v0c1) v0^(xi-lambda) = " + lhs.to_string(10) + " < 2k = " + (Real(2) * k).to_string(10));
    }
  } else {
    const IntervalLadder ladder = extend_ladder(v0, request.xi, request.J);
    for (std::size_t j = 0; j <= request.J; ++j) {
      const Real lhs = pow(ladder[j], gap);
      const Real rhs = Real(2) * k * k * Real(static_cast<long>(j + 1));
      if (lhs < rhs) {
        verdict.first_failing_level = j;
        verdict.violations.push_back("(v0c2) at j = " + std::to_string(j) + ": v_j^(xi-lambda) = " + lhs.to_string(10) +
                                     " < 2k^2(j+1) = " + rhs.to_string(10));
        break;
      }
    }
  }
  return verdict;
}

bool PrimePartition::in_sets(const mpz_class& p) const {
  for (const auto& s : sets) {
    if (std::find(s.begin(), s.end(), p) != s.end()) return true;
  }
  return false;
}

bool PrimePartition::in_spares(const mpz_class& p) const {
  for (const auto& s : spares) {
    if (std::find(s.begin(), s.end(), p) != s.end()) return true;
  }
  return false;
}

PrimePartition build_partition(const PartitionRequest& request, const Real& v0) {
  PrimePartition out;
  out.verdict = check_v0(request, v0);
  // Level J needs v_{J+1} as its floor.
  out.ladder = extend_ladder(v0, request.xi, request.J + 1);
  out.residual_floor = request.K;
  const std::size_t k = request.k();
  out.sets.assign(k, {});
  out.spares.assign(k, {});

  const Real lam(request.lambda_min());
  const Real width_exp = Real(1) + lam;
  // f_i'(q) for every chosen q and every i'.
  std::vector<Real> taken_values;
  std::vector<mpz_class> taken;

  for (std::size_t j = 0; j <= request.J; ++j) {
    const Real& top = out.ladder[j];
    const Real& floor = out.ladder[j + 1];
    Real t = top;
    std::size_t sub = 0;
    for (std::size_t slot = 0; slot < 2 * k; ++slot) {
      const std::size_t i = slot / 2;
      const bool spare = slot % 2 == 1;
      const auto& f = request.functions[i];
      bool placed = false;
      while (!placed) {
        if (!(t > floor)) {
          throw ConstructionError("level j = " + std::to_string(j) + ": only " + std::to_string(sub) +
                                  " usable sub-intervals in (" + floor.to_string(10) + ", " + top.to_string(10) +
                                  "], need " + std::to_string(2 * k));
        }
        const Real upper = t;
        const Real full_lower = t - pow(t, width_exp);
        const bool clipped = !(full_lower > floor);
        const Real lower = clipped ? floor : full_lower;
        t = full_lower;
        bool burned = false;
        for (const auto& v : taken_values) {
          if (lower < v && v <= upper) {
            burned = true;
            break;
          }
        }
        if (burned) continue;
        mpz_class p;
        try {
          p = invert_on_primes(f, upper, lam);
        } catch (const NoPrimeFound& e) {
          if (clipped) continue;
          throw NoPrimeFound("f_" + std::to_string(i + 1) + " at level j = " + std::to_string(j) + ", sub-interval (" +
                             lower.to_string(10) + ", " + upper.to_string(10) + "]: " + e.what());
        }
        const Real value = f.prime_value(p);
        if (!(lower < value && value <= upper)) continue;
        if (p <= request.K || std::find(taken.begin(), taken.end(), p) != taken.end()) continue;
        ++sub;
        placed = true;
        (spare ? out.spares : out.sets)[i].push_back(p);
        out.entries.push_back(PartitionEntry{i, j, spare, p, value, lower, upper});
        taken.push_back(p);
        for (const auto& g : request.functions) taken_values.push_back(g.prime_value(p));
      }
    }
  }
  return out;
}

}  // namespace dioph
