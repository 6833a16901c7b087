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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/expression.hpp"
#include "dioph/factor.hpp"
#include "dioph/real.hpp"

namespace dioph {

/// Restricts primes to a set of residue classes, e.g. "4:1" for p ≡ 1 (mod 4).
struct ResidueFilter {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> allowed;

  static ResidueFilter parse(std::string_view text);
  bool admits(const mpz_class& p) const;
  std::string to_string() const;

  friend bool operator==(const ResidueFilter&, const ResidueFilter&) = default;
};

/// Regularity constants of the class: |f(p^v)| <= C / p^delta, and every window
/// [t - t^(1+lambda), t] with 0 < t <= t0 contains some f(p).
struct Regularity {
  double delta = 1.0;
  double lambda = 0.45;
  double C = 2.0;
  double t0 = 0.5;
};

/// An additive function given by its values on prime powers.
class AdditiveFunction {
 public:
  using Rule = std::function<Real(const mpz_class& p, unsigned v)>;

  /// `monotone_from`: f(x, 1), viewed as a function of an integer x, is strictly
  /// decreasing for x >= monotone_from. Throws DomainError unless 0 < delta <= 1 and
  /// 0 < lambda with delta * lambda < 1.
  AdditiveFunction(std::string name, Rule rule, Regularity regularity, std::optional<ResidueFilter> filter = {},
                   std::string expression = {}, std::uint64_t monotone_from = 2);

  static AdditiveFunction from_expression(std::string name, const std::string& expression, Regularity regularity,
                                          std::optional<ResidueFilter> filter = {}, std::uint64_t monotone_from = 2);

  const std::string& name() const { return name_; }
  const Regularity& regularity() const { return regularity_; }
  double delta() const { return regularity_.delta; }
  double lambda() const { return regularity_.lambda; }
  double C() const { return regularity_.C; }
  double t0() const { return regularity_.t0; }
  const std::optional<ResidueFilter>& residue_filter() const { return filter_; }
  /// Expression text for config-defined functions; empty for builtins.
  const std::string& expression() const { return expression_; }
  std::uint64_t monotone_from() const { return monotone_from_; }

  Real prime_power_value(const mpz_class& p, unsigned v) const { return rule_(p, v); }
  Real prime_value(const mpz_class& p) const { return rule_(p, 1); }

  AdditiveFunction with_regularity(Regularity regularity) const;
  AdditiveFunction with_filter(std::optional<ResidueFilter> filter) const;

  /// Same underlying prime-power rule (name and expression); parameters may differ.
  bool same_rule(const AdditiveFunction& other) const;

 private:
  std::string name_;
  Rule rule_;
  Regularity regularity_;
  std::optional<ResidueFilter> filter_;
  std::string expression_;
  std::uint64_t monotone_from_;
};

/// "totient_log": log(n / phi(n)); "sigma_log": log(sigma(n) / n). Regularity defaults
/// are delta = 1, lambda = 0.45, C = 2, t0 = 0.5. Throws LookupError for other names.
AdditiveFunction builtin(std::string_view name);
AdditiveFunction builtin(std::string_view name, const Regularity& regularity);

/// Sum of f over the prime powers of a complete factorization (0 for 1).
/// Throws IncompleteFactorization otherwise.
Real eval(const AdditiveFunction& f, const Factorization& fac);
/// Convenience: factorizes |n| first.
Real eval(const AdditiveFunction& f, const mpz_class& n, const FactorOptions& options = {});

struct InversionOptions {
  /// Integers examined in the final ascending scan before giving up.
  std::uint64_t max_candidates = 50'000'000;
};

/// Smallest prime p admitted by f's residue filter with t - t^(1+lam) <= f(p) <= t.
/// Throws NoPrimeFound reporting the integer range searched.
mpz_class invert_on_primes(const AdditiveFunction& f, const Real& t, const Real& lam, const InversionOptions& options = {});

/// Empirical evidence about membership in the regularity class.
struct RegularityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples condition (b) over primes <= prime_limit with exponents <= max_exponent, and
/// condition (c) at `t_samples` log-spaced points in [t_min, t0].
RegularityReport check_regularity(const AdditiveFunction& f, std::uint64_t prime_limit = 2000, unsigned max_exponent = 6,
                                  unsigned t_samples = 40, double t_min = 1e-6);

/// Functions defined in a config file plus the builtins.
class FunctionRegistry {
 public:
  FunctionRegistry() = default;

  /// Config format: '#' comments, sections "[function NAME]" followed by "key = value"
  /// lines with keys expression, delta, lambda, C, t0, residue_filter ("m:r1,r2,..."),
  /// monotone_from. Throws ParseError on malformed input.
  static FunctionRegistry from_config_text(std::string_view text);
  static FunctionRegistry from_config_file(const std::string& path);

  void add(AdditiveFunction f);
  /// Config-defined name first, then builtins. Throws LookupError.
  AdditiveFunction lookup(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, AdditiveFunction, std::less<>> functions_;
};

}  // namespace dioph
