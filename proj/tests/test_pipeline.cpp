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
#include <numeric>

#include "dioph/errors.hpp"
#include "dioph/pipeline.hpp"

using namespace dioph;

namespace {

// Trial-division oracle, independent of the library's factorizer.
std::vector<std::pair<unsigned long long, unsigned>> trial_factor(unsigned long long n) {
  std::vector<std::pair<unsigned long long, unsigned>> out;
  for (unsigned long long d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long double sigma_log_oracle(unsigned long long n) {
  long double s = 0;
  for (auto [p, e] : trial_factor(n)) {
    long double num = 0, pk = 1;
    for (unsigned i = 0; i <= e; ++i) {
      num += pk;
      pk *= p;
    }
    s += std::log(num / (pk / p));
  }
  return s;
}

mpz_class sigma_oracle(unsigned long long n) {
  mpz_class s = 1;
  for (auto [p, e] : trial_factor(n)) {
    mpz_class t = 0, pk = 1;
    for (unsigned i = 0; i <= e; ++i) {
      t += pk;
      pk *= static_cast<unsigned long>(p);
    }
    s *= t;
  }
  return s;
}

std::uint64_t brute_sigma(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += d;
  }
  return s;
}

std::uint64_t brute_phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (std::gcd(d, n) == 1) ++c;
  }
  return c;
}

ProblemSpec sigma_theorem1(std::size_t depth) {
  ProblemSpec s;
  s.mode = Mode::Theorem1;
  s.functions = {"sigma_log"};
  s.forms = {{1, 1}};
  s.targets = {"log(2)"};
  s.c = "0.05";
  s.depth = depth;
  return s;
}

const SolveReport& shortcut_report() {
  static const SolveReport r = solve_theorem1(sigma_theorem1(2));
  return r;
}

const SolveReport& poly_report() {
  static const SolveReport r = [] {
    ProblemSpec s;
    s.mode = Mode::Poly;
    s.functions = {"sigma"};
    s.targets = {"0"};
    s.c = "0.05";
    s.depth = 1;
    return solve_poly(s);
  }();
  return r;
}

}  // namespace

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("0.05"), mpq_class(1, 20));
  EXPECT_EQ(parse_rational("1/20"), mpq_class(1, 20));
  EXPECT_EQ(parse_rational("5e-2"), mpq_class(1, 20));
  EXPECT_EQ(parse_rational("-1.5"), mpq_class(-3, 2));
  EXPECT_EQ(parse_rational("2"), mpq_class(2));
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(MultiplicativeValue, MatchesDivisorSums) {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    const auto f = factorize(mpz_class(static_cast<unsigned long>(n)));
    ASSERT_EQ(multiplicative_value("sigma", f), brute_sigma(n)) << n;
    ASSERT_EQ(multiplicative_value("totient", f), brute_phi(n)) << n;
  }
  EXPECT_THROW(multiplicative_value("tau", factorize(6)), LookupError);
}

TEST(ErdosBruteForce, KnownCollisionsAndOracle) {
  const mpq_class c(1, 10);
  const auto sig = erdos_brute_force("sigma", c, 3000);
  const auto phi = erdos_brute_force("totient", c, 3000);
  EXPECT_EQ(brute_sigma(14), 24u);
  EXPECT_EQ(brute_sigma(15), 24u);
  EXPECT_EQ(brute_phi(1), brute_phi(2));
  EXPECT_NE(std::find(sig.begin(), sig.end(), ErdosEntry{14, 0}), sig.end());
  EXPECT_NE(std::find(phi.begin(), phi.end(), ErdosEntry{1, 0}), phi.end());
  // oracle: direct divisor sums, exact comparison d^10 < n^9
  std::vector<ErdosEntry> want;
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const auto a = brute_sigma(n), b = brute_sigma(n + 1);
    const mpz_class d = a > b ? a - b : b - a;
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), d.get_mpz_t(), 10);
    mpz_ui_pow_ui(rhs.get_mpz_t(), n, 9);
    if (lhs < rhs) want.push_back({n, d.get_ui()});
  }
  EXPECT_EQ(sig, want);
}

TEST(SolveTheorem1, ShortcutCertificatesVerify) {
  const auto& r = shortcut_report();
  ASSERT_EQ(r.certificates.size(), 3u);
  for (const auto& cert : r.certificates) {
    EXPECT_EQ(cert.method, "shortcut");
    const auto v = verify_certificate(cert);
    EXPECT_EQ(v.verdict, Verdict::Pass) << (v.discrepancies.empty() ? "" : v.discrepancies.front());
    EXPECT_NE(cert.witnessed_c, "inf");
    EXPECT_GT(std::stod(cert.witnessed_c), 0.05);
    const auto& a = cert.arguments.at(0);
    EXPECT_EQ(a.value, cert.m + 1);
    EXPECT_EQ(a.planned * a.cofactor, a.value);
  }
}

TEST(SolveTheorem1, ShortcutAgreesWithTrialDivisionOracle) {
  const auto& cert = shortcut_report().certificates.front();
  ASSERT_TRUE(cert.m.fits_ulong_p());
  const unsigned long long m = cert.m.get_ui();
  const long double err = std::fabs(sigma_log_oracle(m + 1) - std::log(2.0L));
  EXPECT_LT(err, std::pow(static_cast<long double>(m), -0.05L));
  EXPECT_NEAR(static_cast<double>(err), std::stod(cert.records[0].error), 1e-12);
}

TEST(SolveTheorem1, PlannedErrorNonincreasingAcrossDepths) {
  const auto& r = shortcut_report();
  ASSERT_GE(r.depths.size(), 2u);
  for (std::size_t j = 1; j < r.depths.size(); ++j) {
    EXPECT_LE(r.depths[j].planned_errors[0], r.depths[j - 1].planned_errors[0]);
  }
}

TEST(SolveTheorem1, ExhaustiveScanFindsSmallSolutions) {
  // the target is reachable at small scale too: m <= 10^6 with |f(m+1) - log 2| < m^-0.05
  const std::uint64_t top = 1'000'001;
  std::vector<std::uint64_t> sig(top + 1, 0);
  for (std::uint64_t d = 1; d <= top; ++d) {
    for (std::uint64_t k = d; k <= top; k += d) sig[k] += d;
  }
  int count = 0;
  for (std::uint64_t m = 2; m < top; ++m) {
    const double e = std::fabs(std::log(static_cast<double>(sig[m + 1]) / static_cast<double>(m + 1)) - std::log(2.0));
    if (e < std::pow(static_cast<double>(m), -0.05)) ++count;
  }
  EXPECT_GT(count, 1000);
}

TEST(SolveTheorem1, SievePathForTwoForms) {
  ProblemSpec s;
  s.functions = {"sigma_log", "sigma_log"};
  s.forms = {{1, 1}, {1, 2}};
  s.targets = {"0.1", "log(3/2)+0.1"};
  s.c = "0.02";
  s.depth = 1;
  const auto r = solve_theorem1(s);
  ASSERT_FALSE(r.certificates.empty());
  for (const auto& cert : r.certificates) {
    EXPECT_EQ(cert.method, "sieve");
    EXPECT_EQ(verify_certificate(cert).verdict, Verdict::Pass);
    EXPECT_EQ((cert.m - cert.construction.h) % cert.construction.N, 0);
    for (const auto& a : cert.arguments) {
      EXPECT_EQ(a.claim, CofactorClaim::Rough);
      for (const auto& pp : a.cofactor_factors) EXPECT_GT(pp.prime, cert.construction.z);
    }
  }
}

TEST(SolveTheorem1, Rejections) {
  auto s = sigma_theorem1(1);
  s.targets = {"0"};  // alpha <= f(1) = 0
  EXPECT_THROW(solve_theorem1(s), ParameterRejected);
  s = sigma_theorem1(1);
  s.c = "0.6";
  EXPECT_THROW(solve_theorem1(s), ParameterRejected);
  ProblemSpec two;
  two.functions = {"sigma_log", "totient_log"};
  two.forms = {{1, 2}, {2, 4}};
  two.targets = {"1", "1"};
  try {
    solve_theorem1(two);
    FAIL() << "expected rejection";
  } catch (const ParameterRejected& e) {
    EXPECT_NE(std::string(e.what()).find("(aibi)"), std::string::npos);
  }
}

TEST(SolveTheorem2, DifferenceCertificate) {
  ProblemSpec s;
  s.mode = Mode::Theorem2;
  s.functions = {"sigma_log", "sigma_log"};
  s.forms = {{1, 1}, {1, 2}};
  s.targets = {"0"};
  s.c = "0.05";
  s.depth = 0;
  const auto r = solve_theorem2(s);
  ASSERT_FALSE(r.certificates.empty());
  const auto& cert = r.certificates.front();
  EXPECT_EQ(cert.method, "prime-form sieve");
  EXPECT_EQ(verify_certificate(cert).verdict, Verdict::Pass);
  ASSERT_TRUE(cert.m.fits_ulong_p());
  const unsigned long long m = cert.m.get_ui();
  const long double diff = std::fabs(sigma_log_oracle(m + 2) - sigma_log_oracle(m + 1));
  EXPECT_LT(diff, std::pow(static_cast<long double>(m), -0.05L));
  EXPECT_EQ(cert.arguments[1].claim, CofactorClaim::Prime);
}

TEST(SolveTheorem2, UnreachableZetaIsEmpty) {
  ProblemSpec s;
  s.mode = Mode::Theorem2;
  s.functions = {"sigma_log", "sigma_log"};
  s.forms = {{1, 1}, {1, 2}};
  s.targets = {"5"};
  s.c = "0.05";
  s.depth = 0;
  const auto r = solve_theorem2(s);
  EXPECT_TRUE(r.certificates.empty());
  EXPECT_FALSE(r.notes.empty());
}

TEST(SolveTheorem2, ElliottHalberstamOnlyMovesPrediction) {
  ProblemSpec s;
  s.mode = Mode::Theorem2;
  s.functions = {"sigma_log", "sigma_log"};
  s.forms = {{1, 1}, {1, 2}};
  s.targets = {"0"};
  s.c = "0.05";
  s.depth = 0;
  const auto plain = solve_theorem2(s);
  s.elliott_halberstam = true;
  const auto eh = solve_theorem2(s);
  EXPECT_GT(eh.predicted_c, plain.predicted_c);
  EXPECT_GT(eh.threshold, plain.threshold);
  ASSERT_FALSE(eh.certificates.empty());
  EXPECT_EQ(verify_certificate(eh.certificates.front()).verdict, Verdict::Pass);
}

TEST(SolveErdos, PipelineExactInequality) {
  ProblemSpec s;
  s.c = "0.1";
  s.depth = 0;
  s.functions = {"sigma"};
  const auto res = solve_erdos(s, 2000);
  ASSERT_EQ(res.pipelines.size(), 1u);
  ASSERT_FALSE(res.pipelines[0].certificates.empty());
  const auto& cert = res.pipelines[0].certificates.front();
  ASSERT_TRUE(cert.exact.has_value());
  ASSERT_TRUE(cert.m.fits_ulong_p());
  const unsigned long long m = cert.m.get_ui();
  const mpz_class d = sigma_oracle(m + 1) - sigma_oracle(m);
  EXPECT_EQ(d, cert.exact->difference);
  mpz_class lhs, rhs, ad = abs(d);
  mpz_pow_ui(lhs.get_mpz_t(), ad.get_mpz_t(), 10);
  mpz_pow_ui(rhs.get_mpz_t(), cert.m.get_mpz_t(), 9);
  EXPECT_LT(lhs, rhs);
  EXPECT_EQ(verify_certificate(cert).verdict, Verdict::Pass);
  EXPECT_THROW(
      [] {
        ProblemSpec t;
        t.c = "0.2";
        solve_erdos(t, 10);
      }(),
      ParameterRejected);
}

TEST(SolvePoly, CrtConsistentRoughCertificate) {
  const auto& r = poly_report();
  ASSERT_FALSE(r.certificates.empty());
  for (const auto& cert : r.certificates) {
    EXPECT_EQ(cert.m % 2, 0);
    const auto& a0 = cert.arguments.at(0);
    const auto& a1 = cert.arguments.at(1);
    EXPECT_EQ(a0.value, cert.m * cert.m + 2);
    EXPECT_EQ(a1.value, cert.m * cert.m + 1);
    EXPECT_EQ(a1.value % a1.planned, 0);
    EXPECT_EQ(a0.value % a0.planned, 0);
    for (const auto* a : {&a0, &a1}) {
      for (const auto& pp : a->cofactor_factors) EXPECT_GT(pp.prime, cert.construction.z);
    }
    for (const auto& pp : a1.planned_factors) EXPECT_EQ(pp.prime % 4, 1);
    ASSERT_TRUE(cert.exact.has_value());
    EXPECT_EQ(verify_certificate(cert).verdict, Verdict::Pass);
  }
}

TEST(SolvePoly, RejectsConfigFunctionsAndLargeC) {
  ProblemSpec s;
  s.mode = Mode::Poly;
  s.functions = {"sigma"};
  s.c = "0.2";
  EXPECT_THROW(solve_poly(s), ParameterRejected);
}

TEST(Certificate, JsonRoundTrip) {
  for (const auto* r : {&shortcut_report(), &poly_report()}) {
    for (const auto& cert : r->certificates) {
      const auto text = certificate_to_json(cert);
      const auto back = certificate_from_json(text);
      EXPECT_EQ(certificate_to_json(back), text);
      EXPECT_EQ(verify_certificate(back).verdict, Verdict::Pass);
    }
  }
  const auto all = certificates_from_json(certificates_to_json(shortcut_report().certificates));
  EXPECT_EQ(all.size(), shortcut_report().certificates.size());
  EXPECT_THROW(certificate_from_json("{\"schema\": \"other\"}"), ParseError);
  EXPECT_THROW(certificate_from_json("not json"), ParseError);
}

TEST(Certificate, TamperedMFails) {
  auto cert = shortcut_report().certificates.front();
  cert.m += 1;
  const auto v = verify_certificate(cert);
  EXPECT_EQ(v.verdict, Verdict::Fail);
  bool named = false;
  for (const auto& d : v.discrepancies) named = named || d.find("form gives") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Certificate, TamperedEvidenceFails) {
  auto cert = poly_report().certificates.front();
  auto& f = cert.arguments[1].cofactor_factors;
  ASSERT_FALSE(f.empty());
  f.back().exponent += 1;
  const auto v = verify_certificate(cert);
  EXPECT_EQ(v.verdict, Verdict::Fail);
  bool named = false;
  for (const auto& d : v.discrepancies) named = named || d.find("cofactor factors") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Certificate, TamperedTargetFails) {
  auto cert = shortcut_report().certificates.front();
  cert.records[0].target_text = "log(2) + 1/10^9";
  EXPECT_EQ(verify_certificate(cert).verdict, Verdict::Fail);
}

TEST(Certificate, ExhaustedFactoringIsInconclusive) {
  const auto& cert = shortcut_report().certificates.back();
  VerifyOptions tight;
  tight.factor.trial_bound = 100;
  tight.factor.rho_budget = 1;
  const auto v = verify_certificate(cert, tight);
  EXPECT_EQ(v.verdict, Verdict::Inconclusive);
}

TEST(Pipeline, GovernorAndTruncationAreRecorded) {
  ProblemSpec s;
  s.mode = Mode::Theorem2;
  s.functions = {"sigma_log", "sigma_log"};
  s.forms = {{1, 1}, {1, 2}};
  s.targets = {"0"};
  s.c = "0.05";
  s.depth = 2;
  s.max_modulus_bits = 40;
  s.max_range = 5000;
  const auto r = solve_theorem2(s);
  EXPECT_LT(r.effective_depth, 2u);
  bool governed = false;
  for (const auto& n : r.notes) governed = governed || n.find("scale governor") != std::string::npos;
  EXPECT_TRUE(governed);
  ASSERT_FALSE(r.depths.empty());
  EXPECT_TRUE(r.depths[0].truncated);
  EXPECT_EQ(r.depths[0].range_count, 5000u);
  for (const auto& cert : r.certificates) {
    EXPECT_TRUE(cert.construction.truncated);
    EXPECT_LE(mpz_sizeinbase(cert.construction.N.get_mpz_t(), 2), 40u);
  }
}
