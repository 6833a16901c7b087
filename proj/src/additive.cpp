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

#include "dioph/additive.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dioph/errors.hpp"
#include "dioph/primes.hpp"

namespace dioph {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an unsigned integer for " + what + ", got '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a real number for " + what + ", got '" + s + "'");
  }
}

Real totient_rule(const mpz_class& p, unsigned /*v*/) { return log1p(Real(mpq_class(1, p - 1))); }

Real sigma_rule(const mpz_class& p, unsigned v) {
  mpz_class pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), v);
  mpq_class ratio(pv - 1, pv * (p - 1));
  ratio.canonicalize();
  return log1p(Real(ratio));
}

// First x >= start with pred(x) true, for pred monotone false -> true.
template <typename Pred>
std::optional<mpz_class> first_true(const mpz_class& start, Pred pred) {
  if (pred(start)) return start;
  mpz_class lo = start;  // pred(lo) false
  mpz_class step = 1;
  mpz_class hi = start + step;
  while (!pred(hi)) {
    lo = hi;
    step *= 2;
    hi = start + step;
    if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 4096) return std::nullopt;
  }
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

ResidueFilter ResidueFilter::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("residue filter must look like 'm:r1,r2', got '" + s + "'");
  ResidueFilter f;
  f.modulus = parse_u64(trim(s.substr(0, colon)), "residue filter modulus");
  if (f.modulus == 0) throw ParseError("residue filter modulus must be positive");
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) f.allowed.push_back(parse_u64(trim(item), "residue") % f.modulus);
  if (f.allowed.empty()) throw ParseError("residue filter lists no residues");
  std::sort(f.allowed.begin(), f.allowed.end());
  f.allowed.erase(std::unique(f.allowed.begin(), f.allowed.end()), f.allowed.end());
  return f;
}

bool ResidueFilter::admits(const mpz_class& p) const {
  const std::uint64_t r = mpz_fdiv_ui(p.get_mpz_t(), modulus);
  return std::binary_search(allowed.begin(), allowed.end(), r);
}

std::string ResidueFilter::to_string() const {
  std::string s = std::to_string(modulus) + ":";
  for (std::size_t i = 0; i < allowed.size(); ++i) s += (i ? "," : "") + std::to_string(allowed[i]);
  return s;
}

AdditiveFunction::AdditiveFunction(std::string name, Rule rule, Regularity regularity, std::optional<ResidueFilter> filter,
                                   std::string expression, std::uint64_t monotone_from)
    : name_(std::move(name)),
      rule_(std::move(rule)),
      regularity_(regularity),
      filter_(std::move(filter)),
      expression_(std::move(expression)),
      monotone_from_(std::max<std::uint64_t>(monotone_from, 2)) {
  const auto& r = regularity_;
  if (!(r.delta > 0 && r.delta <= 1)) throw DomainError(name_ + ": delta must lie in (0, 1]");
  if (!(r.lambda > 0 && r.delta * r.lambda < 1)) throw DomainError(name_ + ": need lambda > 0 and delta * lambda < 1");
  if (!(r.C > 0)) throw DomainError(name_ + ": C must be positive");
  if (!(r.t0 > 0)) throw DomainError(name_ + ": t0 must be positive");
}

AdditiveFunction AdditiveFunction::from_expression(std::string name, const std::string& expression, Regularity regularity,
                                                   std::optional<ResidueFilter> filter, std::uint64_t monotone_from) {
  const Expression parsed = Expression::parse(expression);
  Rule rule = [parsed](const mpz_class& p, unsigned v) {
    const Real rp(p);
    const Real rv(static_cast<long>(v));
    return parsed.evaluate(&rp, &rv);
  };
  return AdditiveFunction(std::move(name), std::move(rule), regularity, std::move(filter), expression, monotone_from);
}

AdditiveFunction AdditiveFunction::with_regularity(Regularity regularity) const {
  return AdditiveFunction(name_, rule_, regularity, filter_, expression_, monotone_from_);
}

AdditiveFunction AdditiveFunction::with_filter(std::optional<ResidueFilter> filter) const {
  return AdditiveFunction(name_, rule_, regularity_, std::move(filter), expression_, monotone_from_);
}

bool AdditiveFunction::same_rule(const AdditiveFunction& other) const {
  return name_ == other.name_ && expression_ == other.expression_;
}

AdditiveFunction builtin(std::string_view name) { return builtin(name, Regularity{}); }

AdditiveFunction builtin(std::string_view name, const Regularity& regularity) {
  if (name == "totient_log") return AdditiveFunction("totient_log", totient_rule, regularity);
  if (name == "sigma_log") return AdditiveFunction("sigma_log", sigma_rule, regularity);
  throw LookupError("unknown additive function '" + std::string(name) + "' (builtins: totient_log, sigma_log)");
}

Real eval(const AdditiveFunction& f, const Factorization& fac) {
  if (!fac.complete()) {
    throw IncompleteFactorization("cannot evaluate " + f.name() + " at " + fac.value().get_str() +
                                  ": unfactored part " + fac.to_string());
  }
  Real sum;
  for (const auto& pp : fac.factors()) sum += f.prime_power_value(pp.prime, pp.exponent);
  return sum;
}

Real eval(const AdditiveFunction& f, const mpz_class& n, const FactorOptions& options) {
  return eval(f, factorize(abs(n), options));
}

mpz_class invert_on_primes(const AdditiveFunction& f, const Real& t, const Real& lam, const InversionOptions& options) {
  if (t.sign() <= 0) throw DomainError("invert_on_primes: t must be positive");
  const Real lower = t - pow(t, Real(1) + lam);
  if (lower.sign() <= 0) throw DomainError("invert_on_primes: t - t^(1+lam) must be positive");
  const auto& filter = f.residue_filter();
  auto admitted = [&](const mpz_class& p) { return !filter || filter->admits(p); };
  auto in_window = [&](const mpz_class& p) {
    const Real value = f.prime_value(p);
    return lower <= value && value <= t;
  };

  for (std::uint64_t p = 2; p < f.monotone_from(); ++p) {
    const mpz_class mp(static_cast<unsigned long>(p));
    if (is_prime_u64(p) && admitted(mp) && in_window(mp)) return mp;
  }

  const mpz_class start(static_cast<unsigned long>(f.monotone_from()));
  const auto x_lo = first_true(start, [&](const mpz_class& x) { return f.prime_value(x) <= t; });
  const auto past_hi = first_true(start, [&](const mpz_class& x) { return f.prime_value(x) < lower; });
  const std::string window = "[" + lower.to_string(12) + ", " + t.to_string(12) + "]";
  if (!x_lo || !past_hi) throw NoPrimeFound(f.name() + ": window " + window + " beyond searchable integers");
  const mpz_class x_hi = *past_hi - 1;
  if (*x_lo > x_hi) {
    throw NoPrimeFound(f.name() + ": no integer x >= " + start.get_str() + " has f(x) in " + window +
                       " (searched range [" + x_lo->get_str() + ", " + x_hi.get_str() + "] is empty)");
  }
  std::uint64_t examined = 0;
  for (mpz_class x = *x_lo; x <= x_hi; ++x) {
    if (++examined > options.max_candidates) {
      throw NoPrimeFound(f.name() + ": scan budget exhausted in [" + x_lo->get_str() + ", " + x_hi.get_str() + "]");
    }
    if (admitted(x) && is_probable_prime(x) && in_window(x)) return x;
  }
  throw NoPrimeFound(f.name() + ": no admitted prime with f(p) in " + window + "; searched [" + x_lo->get_str() + ", " +
                     x_hi.get_str() + "]");
}

RegularityReport check_regularity(const AdditiveFunction& f, std::uint64_t prime_limit, unsigned max_exponent,
                                  unsigned t_samples, double t_min) {
  RegularityReport report;
  const Real C(f.C());
  const Real delta(f.delta());
  for (std::uint64_t p : sieve_primes(std::max<std::uint64_t>(prime_limit, 2))) {
    const mpz_class mp(static_cast<unsigned long>(p));
    const Real bound = C / pow(Real(mp), delta);
    for (unsigned v = 1; v <= max_exponent; ++v) {
      if (abs(f.prime_power_value(mp, v)) > bound) {
        report.violations.push_back("decay: |f(" + std::to_string(p) + "^" + std::to_string(v) + ")| > C/p^delta");
      }
    }
  }
  const Real lam(f.lambda());
  for (unsigned i = 0; i < t_samples; ++i) {
    const double frac = t_samples == 1 ? 0.0 : static_cast<double>(i) / (t_samples - 1);
    const double t = f.t0() * std::pow(t_min / f.t0(), frac);
    try {
      invert_on_primes(f, Real(t), lam);
    } catch (const NoPrimeFound& e) {
      report.violations.push_back("window at t=" + std::to_string(t) + ": " + e.what());
    } catch (const DomainError& e) {
      report.violations.push_back("window at t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return report;
}

FunctionRegistry FunctionRegistry::from_config_text(std::string_view text) {
  FunctionRegistry registry;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  struct Pending {
    std::string name;
    std::map<std::string, std::string> keys;
    int line = 0;
  };
  std::optional<Pending> current;

  auto flush = [&]() {
    if (!current) return;
    const auto& k = current->keys;
    auto get = [&](const std::string& key) -> const std::string* {
      auto it = k.find(key);
      return it == k.end() ? nullptr : &it->second;
    };
    const std::string* expr = get("expression");
    if (!expr) throw ParseError("function '" + current->name + "' (line " + std::to_string(current->line) + ") has no expression");
    Regularity r;
    if (auto* s = get("delta")) r.delta = parse_double(*s, "delta");
    if (auto* s = get("lambda")) r.lambda = parse_double(*s, "lambda");
    if (auto* s = get("C")) r.C = parse_double(*s, "C");
    if (auto* s = get("t0")) r.t0 = parse_double(*s, "t0");
    std::optional<ResidueFilter> filter;
    if (auto* s = get("residue_filter")) filter = ResidueFilter::parse(*s);
    std::uint64_t monotone = 2;
    if (auto* s = get("monotone_from")) monotone = parse_u64(*s, "monotone_from");
    for (const auto& [key, _] : k) {
      static const std::vector<std::string> kKnown{"expression", "delta", "lambda", "C", "t0", "residue_filter", "monotone_from"};
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        throw ParseError("function '" + current->name + "': unknown key '" + key + "'");
      }
    }
    registry.add(AdditiveFunction::from_expression(current->name, *expr, r, filter, monotone));
    current.reset();
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": unterminated section header");
      flush();
      std::istringstream header(s.substr(1, s.size() - 2));
      std::string kind, name, extra;
      header >> kind >> name >> extra;
      if (kind != "function" || name.empty() || !extra.empty()) {
        throw ParseError("line " + std::to_string(lineno) + ": expected '[function NAME]'");
      }
      current = Pending{name, {}, lineno};
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos || !current) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value' inside a [function] section");
    }
    current->keys[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
  }
  flush();
  return registry;
}

FunctionRegistry FunctionRegistry::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_config_text(buffer.str());
}

void FunctionRegistry::add(AdditiveFunction f) {
  const std::string key = f.name();
  functions_.insert_or_assign(key, std::move(f));
}

AdditiveFunction FunctionRegistry::lookup(std::string_view name) const {
  if (auto it = functions_.find(name); it != functions_.end()) return it->second;
  return builtin(name);
}

std::vector<std::string> FunctionRegistry::names() const {
  std::vector<std::string> out{"sigma_log", "totient_log"};
  for (const auto& [name, _] : functions_) out.push_back(name);
  return out;
}

}  // namespace dioph
