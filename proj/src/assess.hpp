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

// Shared by the solvers and the verifier: evaluates the inequalities a certificate claims.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dioph/additive.hpp"
#include "dioph/pipeline.hpp"
#include "dioph/real.hpp"

namespace dioph::detail {

enum class Cmp { Less, NotLess, Unclear };

/// x < m^(e - c) for x >= 0, compared on the log scale with a rounding margin.
Cmp below_power(const Real& x, const mpz_class& m, const mpq_class& c, long e);

/// |d| < m^(e - c), exact.
bool exact_below_power(const mpz_class& d, const mpz_class& m, const mpq_class& c, long e);

/// e - log(x)/log(m), nudged down; nullopt when x == 0.
std::optional<Real> witnessed_exponent(const Real& x, const mpz_class& m, long e);
std::string format_exponent(const std::optional<Real>& c);

/// Significant digits used for recorded reals at a given precision.
int record_digits(long precision_bits);

mpz_class eval_poly(const std::vector<mpz_class>& coeffs, const mpz_class& m);

AdditiveFunction resolve_function(const FunctionRef& ref);
/// "sigma" for sigma_log, "totient" for totient_log, empty otherwise.
std::string multiplicative_partner(const std::string& function_name);

struct RecordOutcome {
  Real value;
  Real target;
  Real error;
  Cmp cmp = Cmp::Unclear;
};

struct Assessment {
  std::vector<Real> f;
  std::vector<RecordOutcome> records;
  std::optional<mpz_class> exact_difference;
  bool exact_ok = true;
  std::optional<Real> c_star;
  std::optional<Real> exact_c_star;
  /// Largest record error; drives candidate ranking.
  Real worst;
  bool unclear = false;
  /// Every required check holds and the witnessed exponents exceed c.
  bool pass = false;
};

/// `cert` supplies m, records (plus, minus, target_text, required) and the exact spec.
/// `full` holds the complete factorization of every argument.
Assessment assess(const Certificate& cert, const std::vector<AdditiveFunction>& fns, const std::vector<Factorization>& full,
                  const mpq_class& c);

}  // namespace dioph::detail
