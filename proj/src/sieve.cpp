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

#include "dioph/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"

namespace dioph {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 invmod(u64 a, u64 p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<u64>(t);
}

u64 reduce(const mpz_class& x, u64 p) { return mpz_fdiv_ui(x.get_mpz_t(), p); }

mpz_class factorial(std::size_t k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

CofactorPoly make_cofactor(std::vector<mpz_class> numerator, const mpz_class& planned, std::string label) {
  for (const auto& c : numerator) {
    if (!mpz_divisible_p(c.get_mpz_t(), planned.get_mpz_t())) {
      throw ConstructionError("cofactor " + label + ": coefficient " + c.get_str() + " is not divisible by the planned part " +
                              planned.get_str());
    }
  }
  CofactorPoly poly;
  for (const auto& c : numerator) poly.coeffs.push_back(c / planned);
  poly.planned = planned;
  poly.label = std::move(label);
  return poly;
}

// Union of cofactor roots mod p; nullopt if some cofactor vanishes identically.
std::optional<std::vector<u64>> system_roots(const LinearSystem& system, u64 p) {
  std::vector<u64> all;
  for (const auto& poly : system.cofactors) {
    auto roots = poly_roots_mod_prime(poly, p);
    if (!roots) return std::nullopt;
    all.insert(all.end(), roots->begin(), roots->end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

struct Strike {
  u64 p;
  u64 offset;  // first index i >= 0 with start + i ≡ root (mod p)
};

}  // namespace

mpz_class CofactorPoly::value(const mpz_class& s) const {
  mpz_class out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) out = out * s + coeffs[i];
  return out;
}

std::size_t CofactorPoly::degree() const {
  std::size_t d = coeffs.size();
  while (d > 1 && coeffs[d - 1] == 0) --d;
  return d == 0 ? 0 : d - 1;
}

mpz_class sieve_modulus_L(std::size_t k, const std::vector<mpz_class>& factors) {
  mpz_class base = 2 * factorial(k);
  for (const auto& x : factors) {
    if (x != 0) base *= abs(x);
  }
  return base * base;
}

LinearSystem assemble_system(const std::vector<LinearForm>& forms, const mpz_class& L) {
  if (L < 1) throw DomainError("L must be positive");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].a <= 0) throw DomainError("form " + std::to_string(i) + ": a must be positive");
    if (forms[i].modulus < 1) throw DomainError("form " + std::to_string(i) + ": modulus must be positive");
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (forms[i].a * forms[j].b == forms[j].a * forms[i].b) {
        throw DomainError("forms " + std::to_string(i) + " and " + std::to_string(j) + " violate a_i b_j != a_j b_i");
      }
    }
  }
  LinearSystem sys;
  sys.forms = forms;
  sys.L = L;
  sys.rows.emplace_back(0, L);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& f = forms[i];
    auto row = solve_linear(f.a, f.b, f.modulus);
    if (!row) {
      throw ConstructionError("form " + std::to_string(i) + ": " + f.a.get_str() + " m + " + f.b.get_str() +
                              " ≡ 0 (mod " + f.modulus.get_str() + ") has no solution");
    }
    sys.rows.push_back(*row);
  }
  sys.solution = crt_solve(sys.rows);
  sys.all_solutions = {sys.solution};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto& f = forms[i];
    const mpz_class planned = f.b != 0 ? mpz_class(abs(f.b) * f.modulus) : mpz_class(f.a * L * f.modulus);
    sys.cofactors.push_back(make_cofactor({f.a * sys.h() + f.b, f.a * sys.N()}, planned, "form " + std::to_string(i)));
  }
  return sys;
}

LinearSystem assemble_quadratic(const Factorization& n0, const Factorization& n1, std::size_t root_choice) {
  auto roots_for = [](long a, const Factorization& n) -> std::vector<mpz_class> {
    if (n.value() == 1) return {0};
    if (mpz_even_p(n.value().get_mpz_t())) throw DomainError("quadratic moduli must be odd");
    return modular_sqrt(a, n);
  };
  const auto r0 = roots_for(-2, n0);
  const auto r1 = roots_for(-1, n1);
  if (r0.empty()) throw ConstructionError("m^2 + 2 ≡ 0 (mod " + n0.value().get_str() + ") has no solution");
  if (r1.empty()) throw ConstructionError("m^2 + 1 ≡ 0 (mod " + n1.value().get_str() + ") has no solution");
  LinearSystem sys;
  sys.quadratic = true;
  sys.L = 2;
  for (const auto& a : r0) {
    for (const auto& b : r1) {
      std::vector<Congruence> rows{{0, 2}, {a, n0.value()}, {b, n1.value()}};
      sys.all_solutions.push_back(crt_solve(rows));
    }
  }
  std::sort(sys.all_solutions.begin(), sys.all_solutions.end(),
            [](const Congruence& x, const Congruence& y) { return x.residue() < y.residue(); });
  if (root_choice >= sys.all_solutions.size()) throw DomainError("root_choice out of range");
  sys.solution = sys.all_solutions[root_choice];
  // Rows as stated: the square-root rows are recorded through the chosen residue.
  sys.rows = {Congruence(0, 2), Congruence(sys.h(), n0.value()), Congruence(sys.h(), n1.value())};
  const mpz_class& h = sys.h();
  const mpz_class& N = sys.N();
  sys.cofactors.push_back(make_cofactor({h * h + 2, 2 * h * N, N * N}, 2 * n0.value(), "m^2+2"));
  sys.cofactors.push_back(make_cofactor({h * h + 1, 2 * h * N, N * N}, n1.value(), "m^2+1"));
  return sys;
}

std::optional<std::vector<std::uint64_t>> poly_roots_mod_prime(const CofactorPoly& poly, std::uint64_t p) {
  u64 c[3] = {0, 0, 0};
  for (std::size_t i = 0; i < poly.coeffs.size() && i < 3; ++i) c[i] = reduce(poly.coeffs[i], p);
  if (poly.coeffs.size() > 3) throw UnsupportedInput("cofactor degree above 2");
  std::vector<u64> out;
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) return std::nullopt;
  if (p == 2) {
    for (u64 s = 0; s < p; ++s) {
      if ((c[0] + mulmod(c[1], s, p) + mulmod(c[2], mulmod(s, s, p), p)) % p == 0) out.push_back(s);
    }
    return out;
  }
  if (c[2] == 0) {
    if (c[1] == 0) return out;
    out.push_back(mulmod((p - c[0]) % p, invmod(c[1], p), p));
    return out;
  }
  // Odd p: s = (-c1 ± sqrt(c1^2 - 4 c2 c0)) / (2 c2).
  const u64 disc = (mulmod(c[1], c[1], p) + p - mulmod(4 % p, mulmod(c[2], c[0], p), p)) % p;
  const u64 inv = invmod(mulmod(2, c[2], p), p);
  const u64 neg_b = (p - c[1]) % p;
  if (disc == 0) {
    out.push_back(mulmod(neg_b, inv, p));
    return out;
  }
  const auto roots = sqrt_mod_prime(mpz_class(static_cast<unsigned long>(disc)), mpz_class(static_cast<unsigned long>(p)));
  for (const auto& r : roots) out.push_back(mulmod((neg_b + r.get_ui()) % p, inv, p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

mpz_class omega(const LinearSystem& system, const mpz_class& d) {
  if (d < 1) throw DomainError("omega needs d >= 1");
  mpz_class out = 1;
  const auto fac = factorize(d);
  if (!fac.complete()) throw IncompleteFactorization("omega: cannot factor " + d.get_str());
  for (const auto& pp : fac.factors()) {
    if (!pp.prime.fits_ulong_p()) throw ResourceError("omega: prime factor too large");
    const u64 p = pp.prime.get_ui();
    if (pp.exponent == 1) {
      const auto roots = system_roots(system, p);
      out *= roots ? static_cast<unsigned long>(roots->size()) : static_cast<unsigned long>(p);
      continue;
    }
    mpz_class q;
    mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    if (q > (1 << 24)) throw ResourceError("omega: prime power " + q.get_str() + " too large for direct counting");
    const u64 qq = q.get_ui();
    unsigned long count = 0;
    for (u64 s = 0; s < qq; ++s) {
      const mpz_class ms(static_cast<unsigned long>(s));
      u64 prod = 1;
      for (const auto& poly : system.cofactors) prod = mulmod(prod, reduce(poly.value(ms), qq), qq);
      if (prod == 0) ++count;
    }
    out *= count;
  }
  return out;
}

double sieve_beta(unsigned kappa, bool* placeholder) {
  if (kappa == 0) throw DomainError("sieve dimension must be positive");
  if (placeholder) *placeholder = kappa >= 3;
  if (kappa == 1) return 2.0;
  if (kappa == 2) return 4.2665;
  return 3.0 * kappa;
}

std::uint64_t SieveConfig::z_for(const mpz_class& N) const {
  const double value = std::floor(std::exp(c0 * std::log(mpz_get_d(N.get_mpz_t()))));
  if (!(value >= 1)) return 1;
  if (value > static_cast<double>(kMaxSieveLimit)) return kMaxSieveLimit;
  return static_cast<std::uint64_t>(value);
}

ParameterChoice choose_parameters(const ParameterInput& in) {
  if (!(in.epsilon > 0 && in.epsilon < 1.0 / 3)) throw DomainError("epsilon must lie in (0, 1/3)");
  if (in.k == 0) throw DomainError("k must be positive");
  if (in.A != 1 && in.A != 2) throw DomainError("A must be 1 or 2");
  const double cap = in.lambda_eff / in.A;
  const double xi = in.xi_prime.value_or(0.95 * cap);
  if (!(xi > 0 && xi < cap)) throw DomainError("xi' must lie in (0, lambda_eff / A)");
  const double eps = in.epsilon, delta = in.delta, lam = in.lambda_eff;
  const double k = static_cast<double>(in.k);
  ParameterChoice out;
  out.xi_prime = xi;
  auto& cfg = out.config;
  cfg.epsilon = eps;
  auto set_kappa = [&](unsigned kappa) {
    cfg.kappa = kappa;
    cfg.beta = sieve_beta(kappa, &cfg.beta_placeholder);
  };
  switch (in.variant) {
    case SieveVariant::Theorem1:
      if (in.shortcut) {
        if (in.k != 1) throw DomainError("the shortcut needs k = 1");
        set_kappa(1);
        cfg.mu = 0;
        cfg.c0 = 0;
        out.predicted_c = delta * xi;
        out.threshold = delta * lam;
        return out;
      }
      set_kappa(static_cast<unsigned>(in.k));
      break;
    case SieveVariant::Theorem2:
      if (in.k < 2) throw DomainError("Theorem 2 sieve with k = 1 uses the prime-form variant");
      set_kappa(static_cast<unsigned>(in.k + 1));
      break;
    case SieveVariant::Theorem2PrimeForm: {
      if (in.k != 1) throw DomainError("the prime-form variant needs k = 1");
      set_kappa(1);
      if (in.elliott_halberstam) {
        cfg.mu = 2 * xi / ((1 - eps) * (1 - eps));
        cfg.c0 = cfg.mu * (1 - eps) * (1 - eps) / 2;
        out.threshold = delta * lam / (1 + 2 * lam);
      } else {
        cfg.mu = 2 * xi / ((0.5 - eps) * (1 - eps));
        cfg.c0 = cfg.mu * (0.5 - eps) * (1 - eps) / 2;
        out.threshold = delta * lam / (1 + 4 * lam);
      }
      out.predicted_c = delta * xi / (1 + cfg.mu);
      return out;
    }
    case SieveVariant::Poly:
      set_kappa(2);
      cfg.mu = xi * cfg.beta / (1 - 3 * eps);
      cfg.c0 = cfg.mu * (1 - 2 * eps) * (1 - eps) / cfg.beta;
      out.predicted_c = delta * xi / (1 + xi * cfg.beta / (1 - 3 * eps));
      out.threshold = delta * lam / (1 + lam * cfg.beta);
      return out;
  }
  cfg.mu = xi * cfg.beta / (k * (1 - 3 * eps));
  cfg.c0 = cfg.mu * (1 - 2 * eps) * (1 - eps) / cfg.beta;
  out.predicted_c = delta * xi / (k + xi * cfg.beta / (1 - 3 * eps));
  out.threshold = delta * lam / (in.A * k + lam * cfg.beta);
  return out;
}

std::vector<Survivor> segmented_rough_search(const LinearSystem& system, const SieveConfig& config, const SearchRange& range,
                                             SearchStats* stats) {
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  st = SearchStats{};
  if (config.segment_size == 0) throw DomainError("segment_size must be positive");
  if (config.segment_size > kMaxSegmentSize) {
    throw ResourceError("segment_size " + std::to_string(config.segment_size) + " exceeds the budget of " +
                        std::to_string(kMaxSegmentSize) + "; use a smaller segment size");
  }
  if (config.z > kMaxSieveLimit) throw ResourceError("z exceeds the sieve limit");
  std::vector<Survivor> out;
  if (range.count == 0) return out;

  std::vector<Strike> strikes;
  if (config.z >= 2) {
    const auto primes = PrimeCache::instance().up_to(config.z);
    for (u64 p : *primes) {
      if (p > config.z) break;
      const auto roots = system_roots(system, p);
      if (!roots) return out;  // p divides every value
      const u64 start_mod = reduce(range.start, p);
      for (u64 r : *roots) strikes.push_back(Strike{p, (r + p - start_mod) % p});
    }
  }

  const u64 S = config.segment_size;
  const u64 segments = (range.count + S - 1) / S;
  auto run_segment = [&](u64 t) {
    const u64 begin = t * S;
    const u64 len = std::min(S, range.count - begin);
    std::vector<char> alive(len, 1);
    for (const auto& sk : strikes) {
      const u64 shift = begin % sk.p;
      u64 i = (sk.offset + sk.p - shift) % sk.p;
      for (; i < len; i += sk.p) alive[i] = 0;
    }
    std::vector<Survivor> found;
    for (u64 i = 0; i < len; ++i) {
      if (!alive[i]) continue;
      Survivor sv;
      sv.s = range.start + mpz_class(static_cast<unsigned long>(begin + i));
      bool ok = true;
      for (const auto& poly : system.cofactors) {
        sv.cofactors.push_back(poly.value(sv.s));
        if (sv.cofactors.back() == 0) ok = false;
      }
      if (!ok) continue;
      sv.m = system.m_at(sv.s);
      found.push_back(std::move(sv));
    }
    return found;
  };
  auto prime_form_ok = [&](const Survivor& sv) {
    if (!config.require_prime_form) return true;
    const mpz_class v = config.require_prime_form->q * sv.s + config.require_prime_form->r;
    return v > 1 && is_probable_prime(v);
  };

  const unsigned threads = std::max(1u, config.threads);
  for (u64 t = 0; t < segments; t += threads) {
    const u64 wave = std::min<u64>(threads, segments - t);
    std::vector<std::vector<Survivor>> results(wave);
    if (wave == 1) {
      results[0] = run_segment(t);
    } else {
      std::vector<std::future<std::vector<Survivor>>> futures;
      for (u64 w = 0; w < wave; ++w) futures.push_back(std::async(std::launch::async, run_segment, t + w));
      for (u64 w = 0; w < wave; ++w) results[w] = futures[w].get();
    }
    for (u64 w = 0; w < wave; ++w) {
      ++st.segments;
      st.scanned += std::min(S, range.count - (t + w) * S);
      for (auto& sv : results[w]) {
        ++st.sieve_survivors;
        if (!prime_form_ok(sv)) continue;
        out.push_back(std::move(sv));
        if (config.max_survivors && out.size() >= config.max_survivors) {
          st.stopped_early = true;
          return out;
        }
      }
    }
  }
  return out;
}

double mertens_prediction(const LinearSystem& system, std::uint64_t z, double X) {
  double product = X;
  if (z < 2) return product;
  for (u64 p : *PrimeCache::instance().up_to(z)) {
    if (p > z) break;
    const auto roots = system_roots(system, p);
    const double w = roots ? static_cast<double>(roots->size()) : static_cast<double>(p);
    product *= 1.0 - w / static_cast<double>(p);
  }
  return product;
}

double dimension_constant(const LinearSystem& system, std::uint64_t z, unsigned kappa) {
  if (z < 3) return 0.0;
  std::vector<double> logp, prefix{0.0};
  for (u64 p : *PrimeCache::instance().up_to(z)) {
    if (p > z || logp.size() >= 3000) break;
    const auto roots = system_roots(system, p);
    const double w = roots ? static_cast<double>(roots->size()) : static_cast<double>(p);
    if (w >= static_cast<double>(p)) return std::numeric_limits<double>::infinity();
    logp.push_back(std::log(static_cast<double>(p)));
    prefix.push_back(prefix.back() - std::log1p(-w / static_cast<double>(p)));
  }
  double A = 0.0;
  for (std::size_t a = 0; a < logp.size(); ++a) {
    for (std::size_t b = a + 1; b < logp.size(); ++b) {
      // v = p_a, w = p_b; product over v <= p < w.
      const double lhs = std::exp(prefix[b] - prefix[a]);
      const double rhs = std::pow(logp[b] / logp[a], kappa);
      A = std::max(A, (lhs / rhs - 1.0) * logp[a]);
    }
  }
  return A;
}

}  // namespace dioph
