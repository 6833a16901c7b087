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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/additive.hpp"
#include "dioph/factor.hpp"
#include "dioph/real.hpp"
#include "dioph/sieve.hpp"

namespace dioph {

enum class Mode { Theorem1, Theorem2, Erdos, Poly };

std::string to_string(Mode mode);
/// Accepts theorem1, theorem2, erdos, poly. Throws ParseError.
Mode parse_mode(std::string_view text);

struct FormSpec {
  mpz_class a = 1;
  mpz_class b = 1;
};

struct ProblemSpec {
  Mode mode = Mode::Theorem1;
  /// theorem1: f_1..f_k. theorem2: f_0..f_k. poly and erdos: the additive function
  /// (sigma_log or totient_log; "sigma" and "totient" are accepted too). For erdos an
  /// empty list runs both.
  std::vector<std::string> functions;
  /// Same indexing as `functions`; unused by poly and erdos.
  std::vector<FormSpec> forms;
  /// Constant expressions: alpha_1..alpha_k (theorem1), zeta_1..zeta_k (theorem2),
  /// {zeta} on the log scale (poly). Unused by erdos.
  std::vector<std::string> targets;
  /// Claimed exponent as a decimal or a fraction "p/q".
  std::string c = "0.05";
  std::size_t depth = 2;

  std::optional<double> xi;
  std::optional<double> xi_prime;
  std::optional<double> eta;
  std::optional<double> v0;
  double epsilon = 0.05;
  double gamma_assumed = 0.525;
  double gamma_prime_assumed = 0.53;
  bool elliott_halberstam = false;

  /// Scale governor: largest bit length of N_j used for a search.
  unsigned max_modulus_bits = 96;
  /// Cap on the number of s values searched per depth.
  std::uint64_t max_range = std::uint64_t{1} << 20;
  /// Overrides z = N^c0.
  std::optional<std::uint64_t> z;
  std::size_t certificates_per_depth = 1;
  /// Survivors whose cofactors are factored per depth before giving up.
  std::size_t max_candidates = 2000;
  std::uint64_t pool_limit = 0;  // 0: chosen from eta
  unsigned threads = 1;
  long precision_bits = kDefaultPrecisionBits;
  std::uint64_t seed = 0x5eed;
  /// Rho budget for survivor cofactors.
  std::uint64_t rho_budget = 1'000'000;
  /// poly: integer shift in |h(m^2+1) - h(m^2+2) - shift| < m^(2-c), checked when zeta = 0.
  mpz_class multiplicative_shift = 0;

  FunctionRegistry registry;
};

enum class CofactorClaim { None, Rough, Prime };

struct ArgumentEvidence {
  std::size_t function = 0;
  /// argument = sum_e coefficients[e] * m^e
  std::vector<mpz_class> coefficients;
  std::string label;
  mpz_class value;
  mpz_class planned;
  std::vector<PrimePower> planned_factors;
  mpz_class cofactor;
  std::vector<PrimePower> cofactor_factors;
  CofactorClaim claim = CofactorClaim::None;
};

/// |F(plus) - F(minus) - target| < m^(-c), or |F(plus) - target| without `minus`.
struct TargetRecord {
  std::size_t index = 0;
  std::size_t plus = 0;
  std::optional<std::size_t> minus;
  std::string target_text;
  std::string target;
  std::string value;
  std::string error;
  bool required = true;
};

/// Exact integer check |h(plus) - h(minus) - shift| < m^(exponent - c), h = sigma or totient.
struct ExactRecord {
  std::string h;
  std::size_t plus = 0;
  std::size_t minus = 0;
  mpz_class shift = 0;
  unsigned exponent = 1;
  mpz_class difference = 0;
  bool required = true;
};

struct FunctionRef {
  std::string name;
  /// Empty for builtins.
  std::string expression;
};

struct ConstructionInfo {
  std::size_t depth = 0;
  mpz_class N = 0;  // 0 when no congruence system was used
  mpz_class h = 0;
  mpz_class s = 0;
  std::uint64_t z = 0;
  mpz_class range_start = 0;
  std::uint64_t range_count = 0;
  mpz_class nominal_range = 0;
  bool truncated = false;
};

struct Certificate {
  Mode mode = Mode::Theorem1;
  std::string method;
  std::string claimed_c;
  mpz_class m;
  std::vector<FunctionRef> functions;
  std::vector<ArgumentEvidence> arguments;
  std::vector<TargetRecord> records;
  std::optional<ExactRecord> exact;
  /// min over records of -log(error)/log(m), rounded down; "inf" for zero error.
  std::string witnessed_c;
  std::string exact_witnessed_c;
  ConstructionInfo construction;
  std::map<std::string, std::string> parameters;
  long precision_bits = kDefaultPrecisionBits;
};

/// JSON with integers as decimal strings and reals as decimal strings.
std::string certificate_to_json(const Certificate& cert, int indent = 2);
std::string certificates_to_json(const std::vector<Certificate>& certs, int indent = 2);
/// Accepts a single certificate object. Throws ParseError.
Certificate certificate_from_json(std::string_view text);
/// Accepts an object or an array of certificates.
std::vector<Certificate> certificates_from_json(std::string_view text);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict verdict);

struct VerificationResult {
  Verdict verdict = Verdict::Fail;
  std::vector<std::string> discrepancies;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  FactorOptions factor{1'000'000, 20'000'000, 0x5eed ^ 0xa5a5};
  /// Relative tolerance exponent for recorded reals: 10^-(digits - slack).
  int slack_digits = 6;
};

VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& options = {});

struct DepthReport {
  std::size_t depth = 0;
  mpz_class N = 0;
  std::size_t modulus_bits = 0;
  std::uint64_t z = 0;
  mpz_class nominal_range = 0;
  std::uint64_t range_count = 0;
  bool truncated = false;
  std::uint64_t scanned = 0;
  std::uint64_t survivors = 0;
  std::uint64_t examined = 0;
  std::uint64_t incomplete = 0;
  std::size_t certificates = 0;
  /// tau_i = gamma_i - f_i(n_{i,j}), the planned-part error of each chain.
  std::vector<Real> planned_errors;
  /// Smallest worst-record error over the examined candidates.
  std::optional<Real> best_error;
  std::string note;
};

struct SolveReport {
  Mode mode = Mode::Theorem1;
  std::vector<Certificate> certificates;
  std::vector<DepthReport> depths;
  std::vector<std::string> notes;
  double threshold = 0;
  double predicted_c = 0;
  std::size_t requested_depth = 0;
  std::size_t effective_depth = 0;
  std::size_t ladder_depth = 0;
  long precision_bits = kDefaultPrecisionBits;
  std::map<std::string, std::string> parameters;
};

SolveReport solve_theorem1(const ProblemSpec& spec);
SolveReport solve_theorem2(const ProblemSpec& spec);
SolveReport solve_poly(const ProblemSpec& spec);

struct ErdosEntry {
  std::uint64_t n = 0;
  std::uint64_t difference = 0;  // |h(n+1) - h(n)|
  friend bool operator==(const ErdosEntry&, const ErdosEntry&) = default;
};

struct ErdosResult {
  std::vector<ErdosEntry> brute_totient;
  std::vector<ErdosEntry> brute_sigma;
  std::vector<SolveReport> pipelines;  // one per function run
  std::vector<std::string> notes;
};

/// n <= bound with |h(n+1) - h(n)| < n^(1-c), exact comparison.
std::vector<ErdosEntry> erdos_brute_force(std::string_view h, const mpq_class& c, std::uint64_t bound);

ErdosResult solve_erdos(const ProblemSpec& spec, std::uint64_t bound);

/// Dispatches on spec.mode; erdos runs the pipeline part only.
SolveReport solve(const ProblemSpec& spec);

/// Exact rational from "0.05", "5e-2" or "1/20". Throws ParseError.
mpq_class parse_rational(std::string_view text);

/// sigma(n) or phi(n) from a complete factorization.
mpz_class multiplicative_value(std::string_view h, const Factorization& fac);

}  // namespace dioph
