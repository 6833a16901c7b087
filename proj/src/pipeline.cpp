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

#include "dioph/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "assess.hpp"
#include "dioph/errors.hpp"
#include "dioph/greedy.hpp"
#include "dioph/ladder.hpp"
#include "dioph/primes.hpp"

namespace dioph {

namespace {

using detail::Cmp;

// Re-throws with the stage name prepended, keeping the error type.
template <class F>
auto in_stage(const std::string& stage, F&& fn) -> decltype(fn()) {
  const auto tag = [&](const std::exception& e) { return stage + ": " + e.what(); };
  try {
    return fn();
  } catch (const IncompatibleCongruences& e) {
    throw IncompatibleCongruences(e.first(), e.second(), tag(e));
  } catch (const ParameterRejected& e) {
    throw ParameterRejected(tag(e));
  } catch (const DomainError& e) {
    throw DomainError(tag(e));
  } catch (const ResourceError& e) {
    throw ResourceError(tag(e));
  } catch (const UnsupportedInput& e) {
    throw UnsupportedInput(tag(e));
  } catch (const LookupError& e) {
    throw LookupError(tag(e));
  } catch (const IncompleteFactorization& e) {
    throw IncompleteFactorization(tag(e));
  } catch (const NoPrimeFound& e) {
    throw NoPrimeFound(tag(e));
  } catch (const ConstructionError& e) {
    throw ConstructionError(tag(e));
  } catch (const ParseError& e) {
    throw ParseError(tag(e));
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

mpz_class largest_prime(const mpz_class& n) {
  if (abs(n) < 2) return 1;
  const auto f = factorize(abs(n));
  if (!f.complete()) throw ResourceError("cannot factor " + n.get_str());
  return f.factors().back().prime;
}

Factorization factor_small(const mpz_class& n) {
  auto f = factorize(abs(n));
  if (!f.complete()) throw ResourceError("cannot factor " + n.get_str());
  return f;
}

std::string canonical_function(std::string name) {
  if (name == "sigma") return "sigma_log";
  if (name == "totient" || name == "phi") return "totient_log";
  return name;
}

FunctionRef ref_of(const AdditiveFunction& f) { return {f.name(), f.expression()}; }

bool is_builtin(const AdditiveFunction& f) {
  return f.expression().empty() && (f.name() == "sigma_log" || f.name() == "totient_log");
}

// Builtins inherit lambda from the assumed prime-gap exponent; config functions use their own.
double lambda_eff(const std::vector<AdditiveFunction>& fns, double gap_exponent) {
  double lam = std::numeric_limits<double>::infinity();
  for (const auto& f : fns) lam = std::min(lam, is_builtin(f) ? 1.0 - gap_exponent : f.lambda());
  return lam;
}

double delta_min(const std::vector<AdditiveFunction>& fns) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& f : fns) d = std::min(d, f.delta());
  return d;
}

int rule_count_A(const std::vector<AdditiveFunction>& fns) {
  for (const auto& f : fns) {
    if (!f.same_rule(fns.front())) return 2;
  }
  return 1;
}

struct ChainParams {
  int A = 1;
  Real xi;
  Real eta;
  Real v0;
  double xi_prime = 0;
  std::size_t ladder_depth = 0;
  long precision = kDefaultPrecisionBits;
};

ChainParams choose_chain_params(const ProblemSpec& spec, const std::vector<AdditiveFunction>& fns, const std::vector<Real>& gammas,
                                const mpz_class& K, double lam_eff, std::optional<Real> v0_start = std::nullopt) {
  ChainParams p;
  p.A = rule_count_A(fns);
  double lam_min = std::numeric_limits<double>::infinity(), t0_min = lam_min;
  for (const auto& f : fns) {
    lam_min = std::min(lam_min, f.lambda());
    t0_min = std::min(t0_min, f.t0());
  }
  const double xi = spec.xi.value_or(0.45 * lam_min / p.A);
  if (!(xi > 0 && xi < lam_min / p.A)) {
    throw ParameterRejected("xi = " + fmt(xi) + " must lie in (0, lambda/A) = (0, " + fmt(lam_min / p.A) + ")");
  }
  p.xi = Real(xi);
  Real gamma_min = gammas.front();
  for (const auto& g : gammas) gamma_min = min(gamma_min, g);
  Real v0 = v0_start ? *v0_start : Real(spec.v0.value_or(0.5 * t0_min));
  const Real six = pow(Real(6), -Real(1) / p.xi);
  std::vector<std::string> last;
  bool ok = false;
  for (int attempt = 0; attempt < 60 && !ok; ++attempt) {
    p.eta = spec.eta ? Real(*spec.eta) : Real(0.5) * min(min(v0, six), gamma_min);
    if (p.eta.sign() <= 0) throw ParameterRejected("eta must be positive");
    p.ladder_depth = required_ladder_depth(v0, p.xi, p.eta, spec.depth);
    const auto request = make_request(fns, K, p.ladder_depth, p.xi);
    const auto verdict = check_v0(request, v0);
    if (verdict.pass()) {
      ok = true;
      break;
    }
    last = verdict.violations;
    if (spec.v0) break;
    v0 = v0 / Real(2);
  }
  if (!ok) {
    std::string why;
    for (const auto& v : last) why += (why.empty() ? "" : "; ") + v;
    throw ParameterRejected("no admissible v0: " + why);
  }
  p.v0 = v0;
  const double le = std::log(p.eta.to_double());
  const double etaxi_cap = xi * le / (le - std::log(2.0));
  p.xi_prime = spec.xi_prime.value_or(std::min(0.95 * lam_eff / p.A, 0.98 * etaxi_cap));
  const auto ev = check_eta(p.eta, p.v0, p.xi, gammas, Real(p.xi_prime));
  if (!ev.pass()) {
    std::string why;
    for (const auto& v : ev.violations) why += (why.empty() ? "" : "; ") + v;
    throw ParameterRejected("eta check failed: " + why);
  }
  p.precision = std::max(spec.precision_bits, required_precision(p.eta, p.xi, spec.depth));
  return p;
}

struct Chains {
  PrimePartition partition;
  std::vector<ModulusSequence> sequences;
};

Chains build_chains(const ProblemSpec& spec, const std::vector<AdditiveFunction>& fns, const std::vector<Real>& gammas,
                    const mpz_class& K, const ChainParams& p) {
  Chains c;
  const auto request = make_request(fns, K, p.ladder_depth, p.xi);
  c.partition = in_stage("ladder", [&] { return build_partition(request, p.v0); });
  c.sequences = in_stage("greedy", [&] { return construct_all(request, gammas, p.eta, c.partition, spec.depth, spec.pool_limit); });
  return c;
}

struct Plan {
  ChainParams params;
  ParameterChoice choice;
  Chains chains;
  bool built = false;
};

// Parameter choice plus chain construction. With automatic v0 a failed partition or
// chain is retried at half the v0 (filtered prime sets are sparse at the top of the ladder).
Plan plan_and_build(const ProblemSpec& spec, const std::vector<AdditiveFunction>& fns, const std::vector<Real>& gammas,
                    const mpz_class& K, ParameterInput pin, SolveReport& report) {
  Plan plan;
  std::optional<Real> v0_start;
  constexpr int kAttempts = 12;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    plan.params = in_stage("parameters", [&] { return choose_chain_params(spec, fns, gammas, K, pin.lambda_eff, v0_start); });
    pin.xi_prime = plan.params.xi_prime;
    plan.choice = in_stage("parameters", [&] { return choose_parameters(pin); });
    PrecisionScope scope(plan.params.precision);
    try {
      plan.chains = build_chains(spec, fns, gammas, K, plan.params);
      plan.built = true;
      return plan;
    } catch (const ConstructionError& e) {
      report.notes.push_back(std::string(e.what()) + " (v0 = " + plan.params.v0.to_string(6) + ")");
    } catch (const NoPrimeFound& e) {
      report.notes.push_back(std::string(e.what()) + " (v0 = " + plan.params.v0.to_string(6) + ")");
    }
    if (spec.v0) break;
    v0_start = plan.params.v0 / Real(2);
  }
  return plan;
}

struct ArgPlan {
  std::size_t function = 0;
  std::vector<mpz_class> coeffs;
  std::string label;
  Factorization planned;
  CofactorClaim claim = CofactorClaim::None;
};

std::string form_label(const mpz_class& a, const mpz_class& b) {
  std::string s = a == 1 ? "m" : a.get_str() + "m";
  if (b > 0) s += "+" + b.get_str();
  if (b < 0) s += b.get_str();
  return s;
}

Factorization planned_linear(const FormSpec& f, const mpz_class& L, const Factorization& n) {
  return (f.b != 0 ? factor_small(f.b) : factor_small(f.a * L)) * n;
}

// Fills `cert` for m and the given cofactors. nullopt if some cofactor does not factor
// or an argument is not positive.
std::optional<detail::Assessment> fill_candidate(Certificate& cert, const std::vector<AdditiveFunction>& fns, const mpq_class& c,
                                                 const mpz_class& m, const std::vector<ArgPlan>& args,
                                                 const std::vector<mpz_class>& cofactors, const FactorOptions& fo,
                                                 DepthReport& rep) {
  cert.m = m;
  cert.arguments.clear();
  std::vector<Factorization> full;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    const mpz_class value = detail::eval_poly(a.coeffs, m);
    if (value <= 0) return std::nullopt;
    if (value != a.planned.value() * cofactors[i]) {
      throw ConstructionError("internal: planned part times cofactor differs from " + a.label);
    }
    auto cf = factorize(cofactors[i], fo);
    if (!cf.complete()) {
      ++rep.incomplete;
      return std::nullopt;
    }
    ArgumentEvidence ev;
    ev.function = a.function;
    ev.coefficients = a.coeffs;
    ev.label = a.label;
    ev.value = value;
    ev.planned = a.planned.value();
    ev.planned_factors = a.planned.factors();
    ev.cofactor = cofactors[i];
    ev.cofactor_factors = cf.factors();
    ev.claim = a.claim;
    cert.arguments.push_back(std::move(ev));
    full.push_back(a.planned * cf);
  }
  ++rep.examined;
  auto as = detail::assess(cert, fns, full, c);
  const int digits = detail::record_digits(working_precision());
  for (std::size_t i = 0; i < cert.records.size(); ++i) {
    cert.records[i].target = as.records[i].target.to_string(digits);
    cert.records[i].value = as.records[i].value.to_string(digits);
    cert.records[i].error = as.records[i].error.to_string(digits);
  }
  cert.witnessed_c = detail::format_exponent(as.c_star);
  if (cert.exact) {
    cert.exact->difference = *as.exact_difference;
    cert.exact_witnessed_c = detail::format_exponent(as.exact_c_star);
  }
  if (!rep.best_error || as.worst < *rep.best_error) rep.best_error = as.worst;
  return as;
}

mpz_class nominal_range(const mpz_class& N, double mu) {
  if (mu <= 0) return 1;
  const Real r = pow(Real(N), Real(mu));
  mpz_class n = r.ceil();
  return n < 1 ? mpz_class(1) : n;
}

struct SieveSetup {
  LinearSystem system;        // cofactor per argument, in argument order
  LinearSystem sieve_system;  // what the sieve strikes
  SieveConfig config;
};

void search_depth(const ProblemSpec& spec, const Certificate& base, const std::vector<AdditiveFunction>& fns, const mpq_class& c,
                  const std::vector<ArgPlan>& args, const SieveSetup& setup, DepthReport& rep, SolveReport& report) {
  const auto& sys = setup.system;
  rep.N = sys.N();
  rep.modulus_bits = mpz_sizeinbase(sys.N().get_mpz_t(), 2);
  rep.z = setup.config.z;
  rep.nominal_range = nominal_range(sys.N(), setup.config.mu);
  const mpz_class cap(static_cast<unsigned long>(spec.max_range));
  rep.range_count = (rep.nominal_range < cap ? rep.nominal_range : cap).get_ui();
  rep.truncated = rep.nominal_range > cap;
  FactorOptions fo;
  fo.rho_budget = spec.rho_budget;
  fo.seed = spec.seed;
  const std::uint64_t chunk = std::max<std::uint64_t>(setup.config.segment_size, 1) * std::max(1u, setup.config.threads);
  bool done = false;
  for (std::uint64_t off = 0; off < rep.range_count && !done; off += chunk) {
    SearchRange range{mpz_class(static_cast<unsigned long>(1 + off)), std::min(chunk, rep.range_count - off)};
    SearchStats st;
    auto survivors = segmented_rough_search(setup.sieve_system, setup.config, range, &st);
    rep.scanned += st.scanned;
    rep.survivors += survivors.size();
    for (const auto& sv : survivors) {
      if (rep.examined >= spec.max_candidates) {
        done = true;
        break;
      }
      std::vector<mpz_class> cofs;
      for (const auto& poly : sys.cofactors) cofs.push_back(poly.value(sv.s));
      Certificate cert = base;
      cert.construction.depth = rep.depth;
      cert.construction.N = sys.N();
      cert.construction.h = sys.h();
      cert.construction.s = sv.s;
      cert.construction.z = setup.config.z;
      cert.construction.range_start = 1;
      cert.construction.range_count = rep.range_count;
      cert.construction.nominal_range = rep.nominal_range;
      cert.construction.truncated = rep.truncated;
      auto as = fill_candidate(cert, fns, c, sv.m, args, cofs, fo, rep);
      if (!as || !as->pass) continue;
      report.certificates.push_back(std::move(cert));
      if (++rep.certificates >= spec.certificates_per_depth) {
        done = true;
        break;
      }
    }
  }
  if (rep.certificates == 0) {
    rep.note = "no survivor passed: " + std::to_string(rep.survivors) + " survivors, " + std::to_string(rep.examined) +
               " examined, " + std::to_string(rep.incomplete) + " unfactored";
    if (rep.best_error) rep.note += ", best error " + rep.best_error->to_string(6);
  }
}

SieveConfig finish_config(const ProblemSpec& spec, SieveConfig cfg, const mpz_class& N) {
  cfg.threads = std::max(1u, spec.threads);
  if (spec.z) {
    cfg.z = *spec.z;
  } else {
    cfg.z = std::clamp<std::uint64_t>(cfg.z_for(N), 2, std::uint64_t{1} << 24);
  }
  return cfg;
}

std::vector<AdditiveFunction> lookup_all(const ProblemSpec& spec) {
  std::vector<AdditiveFunction> fns;
  for (const auto& name : spec.functions) fns.push_back(in_stage("functions", [&] { return spec.registry.lookup(canonical_function(name)); }));
  return fns;
}

mpq_class claimed_c(const ProblemSpec& spec) {
  const mpq_class c = parse_rational(spec.c);
  if (c <= 0) throw ParameterRejected("claimed exponent c must be positive");
  return c;
}

void check_aibi(const std::vector<FormSpec>& forms, std::size_t first_index) {
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].a <= 0) throw ParameterRejected("a_" + std::to_string(i + first_index) + " must be positive");
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      if (forms[i].a * forms[j].b == forms[j].a * forms[i].b) {
        throw ParameterRejected("(aibi) violated: a_" + std::to_string(i + first_index) + " b_" + std::to_string(j + first_index) +
                                " = a_" + std::to_string(j + first_index) + " b_" + std::to_string(i + first_index));
      }
    }
  }
}

void record_common(SolveReport& report, const ProblemSpec& spec, const ChainParams& p, const ParameterChoice& pc,
                   const mpz_class& K, const mpz_class& L) {
  report.threshold = pc.threshold;
  report.predicted_c = pc.predicted_c;
  report.ladder_depth = p.ladder_depth;
  report.precision_bits = p.precision;
  report.requested_depth = spec.depth;
  auto& m = report.parameters;
  m["xi"] = p.xi.to_string(10);
  m["xi_prime"] = fmt(pc.xi_prime);
  m["eta"] = p.eta.to_string(10);
  m["v0"] = p.v0.to_string(10);
  m["A"] = std::to_string(p.A);
  m["K"] = K.get_str();
  m["L"] = L.get_str();
  m["ladder_depth"] = std::to_string(p.ladder_depth);
  m["epsilon"] = fmt(pc.config.epsilon);
  m["mu"] = fmt(pc.config.mu);
  m["c0"] = fmt(pc.config.c0);
  m["kappa"] = std::to_string(pc.config.kappa);
  m["beta"] = fmt(pc.config.beta) + (pc.config.beta_placeholder ? " (placeholder)" : "");
  m["threshold"] = fmt(pc.threshold);
  m["predicted_c"] = fmt(pc.predicted_c);
  m["seed"] = std::to_string(spec.seed);
  std::string names;
  for (const auto& f : spec.functions) names += (names.empty() ? "" : ",") + canonical_function(f);
  m["function"] = names;
  if (pc.predicted_c <= parse_rational(spec.c).get_d()) {
    report.notes.push_back("claimed c exceeds the exponent these parameters deliver asymptotically (" + fmt(pc.predicted_c) +
                           "); the search may still find certificates");
  }
}

void check_threshold(const mpq_class& c, double threshold, const std::string& what) {
  if (!(c.get_d() < threshold)) {
    throw ParameterRejected("claimed c = " + fmt(c.get_d()) + " is not below the " + what + " threshold " + fmt(threshold));
  }
}

Certificate base_certificate(Mode mode, const std::string& method, const ProblemSpec& spec, const std::vector<AdditiveFunction>& fns,
                             const SolveReport& report) {
  Certificate b;
  b.mode = mode;
  b.method = method;
  b.claimed_c = spec.c;
  for (const auto& f : fns) b.functions.push_back(ref_of(f));
  b.parameters = report.parameters;
  b.precision_bits = working_precision();
  return b;
}

// Governor: first depth whose modulus is too large, or nullopt.
bool governed(const ProblemSpec& spec, const mpz_class& N, std::size_t j, SolveReport& report) {
  const std::size_t bits = mpz_sizeinbase(N.get_mpz_t(), 2);
  if (bits <= spec.max_modulus_bits) return false;
  report.notes.push_back("scale governor: N_" + std::to_string(j) + " has " + std::to_string(bits) + " bits > " +
                         std::to_string(spec.max_modulus_bits) + "; depth reduced to " +
                         (j == 0 ? std::string("none") : std::to_string(j - 1)));
  return true;
}

void note_empty(SolveReport& report) {
  if (report.certificates.empty()) report.notes.push_back("no certificate at any depth");
}

}  // namespace

// ---------------------------------------------------------------------------

SolveReport solve_theorem1(const ProblemSpec& spec) {
  SolveReport report;
  report.mode = Mode::Theorem1;
  const std::size_t k = spec.functions.size();
  if (k == 0) throw ParameterRejected("theorem1 needs at least one function");
  if (spec.forms.size() != k || spec.targets.size() != k) throw ParameterRejected("theorem1 needs one form and one alpha per function");
  const mpq_class c = claimed_c(spec);
  const auto fns = lookup_all(spec);
  check_aibi(spec.forms, 1);
  std::vector<mpz_class> bs;
  for (std::size_t i = 0; i < k; ++i) {
    if (spec.forms[i].b == 0) throw ParameterRejected("b_" + std::to_string(i + 1) + " must be nonzero");
    bs.push_back(spec.forms[i].b);
  }
  std::vector<Real> alphas, gammas;
  for (std::size_t i = 0; i < k; ++i) {
    alphas.push_back(in_stage("targets", [&] { return parse_real(spec.targets[i]); }));
    const Real fb = eval(fns[i], factor_small(spec.forms[i].b));
    gammas.push_back(alphas[i] - fb);
    if (gammas[i].sign() <= 0) {
      throw ParameterRejected("alpha_" + std::to_string(i + 1) + " = " + alphas[i].to_string(12) + " is not above f_" +
                              std::to_string(i + 1) + "(b_" + std::to_string(i + 1) + ") = " + fb.to_string(12));
    }
  }
  const mpz_class L = sieve_modulus_L(k, bs);
  mpz_class K = largest_prime(L);
  for (const auto& f : spec.forms) K = std::max(K, largest_prime(f.a));
  const bool shortcut = k == 1 && (spec.forms[0].a == 1 || spec.forms[0].a == 2) && spec.forms[0].b > 0;

  ParameterInput pin;
  pin.k = k;
  pin.delta = delta_min(fns);
  pin.lambda_eff = lambda_eff(fns, spec.gamma_assumed);
  pin.A = rule_count_A(fns);
  pin.epsilon = spec.epsilon;
  pin.variant = SieveVariant::Theorem1;
  pin.shortcut = shortcut;
  check_threshold(c, in_stage("parameters", [&] { return choose_parameters(pin); }).threshold, "theorem1");
  const Plan plan = plan_and_build(spec, fns, gammas, K, pin, report);
  const auto& cp = plan.params;
  const auto& pc = plan.choice;
  PrecisionScope scope(cp.precision);
  record_common(report, spec, cp, pc, K, L);

  if (!plan.built) return report;
  const Chains& chains = plan.chains;
  for (const auto& seq : chains.sequences) {
    if (!seq.certified()) report.notes.push_back("chain " + std::to_string(seq.function + 1) + " failed its own certification");
  }
  const Certificate base = base_certificate(Mode::Theorem1, shortcut ? "shortcut" : "sieve", spec, fns, report);
  Certificate tmpl = base;
  for (std::size_t i = 0; i < k; ++i) tmpl.records.push_back({i + 1, i, std::nullopt, spec.targets[i], "", "", "", true});

  std::vector<std::size_t> done_depths;
  for (std::size_t j = 0; j <= spec.depth; ++j) {
    DepthReport rep;
    rep.depth = j;
    for (const auto& seq : chains.sequences) rep.planned_errors.push_back(seq.snapshots[j].tau);
    std::vector<ArgPlan> args;
    for (std::size_t i = 0; i < k; ++i) {
      args.push_back({i, {spec.forms[i].b, spec.forms[i].a}, form_label(spec.forms[i].a, spec.forms[i].b),
                      planned_linear(spec.forms[i], L, chains.sequences[i].snapshots[j].factorization), CofactorClaim::Rough});
    }
    if (shortcut) {
      const auto& f = spec.forms[0];
      const mpz_class& n = chains.sequences[0].snapshots[j].n;
      rep.N = n;
      rep.modulus_bits = mpz_sizeinbase(n.get_mpz_t(), 2);
      const mpz_class m = f.b * (n - 1) / f.a;
      args[0].claim = CofactorClaim::None;
      FactorOptions fo;
      fo.seed = spec.seed;
      Certificate cert = tmpl;
      cert.construction.depth = j;
      if (m >= 2 && f.b * (n - 1) % f.a == 0) {
        auto as = fill_candidate(cert, fns, c, m, args, {1}, fo, rep);
        if (as && as->pass) {
          report.certificates.push_back(std::move(cert));
          rep.certificates = 1;
        }
      }
      if (!rep.certificates) rep.note = "shortcut m did not satisfy the inequality";
      report.depths.push_back(std::move(rep));
      report.effective_depth = j;
      continue;
    }
    std::vector<LinearForm> forms;
    mpz_class N = L;
    for (std::size_t i = 0; i < k; ++i) {
      forms.push_back({spec.forms[i].a, spec.forms[i].b, chains.sequences[i].snapshots[j].n});
      N *= chains.sequences[i].snapshots[j].n;
    }
    if (governed(spec, N, j, report)) break;
    SieveSetup setup;
    setup.system = in_stage("assemble", [&] { return assemble_system(forms, L); });
    setup.sieve_system = setup.system;
    setup.config = finish_config(spec, pc.config, setup.system.N());
    in_stage("search", [&] { search_depth(spec, tmpl, fns, c, args, setup, rep, report); });
    report.depths.push_back(std::move(rep));
    report.effective_depth = j;
  }
  note_empty(report);
  return report;
}

namespace {

SolveReport run_theorem2(const ProblemSpec& spec, Mode mode) {
  SolveReport report;
  report.mode = mode;
  if (spec.functions.size() < 2) throw ParameterRejected("theorem2 needs functions f_0..f_k with k >= 1");
  const std::size_t k = spec.functions.size() - 1;
  if (spec.forms.size() != k + 1) throw ParameterRejected("theorem2 needs forms (a_0, b_0)..(a_k, b_k)");
  if (spec.targets.size() != k) throw ParameterRejected("theorem2 needs zeta_1..zeta_k");
  const mpq_class c = claimed_c(spec);
  const auto fns = lookup_all(spec);
  check_aibi(spec.forms, 0);
  std::vector<mpz_class> ab;
  for (const auto& f : spec.forms) {
    ab.push_back(f.a);
    ab.push_back(f.b);
  }
  const mpz_class L = sieve_modulus_L(k, ab);
  mpz_class K_L = largest_prime(L);
  for (const auto& x : ab) K_L = std::max(K_L, largest_prime(x));

  std::vector<Real> zetas;
  Real zeta_sum(0);
  for (const auto& t : spec.targets) {
    zetas.push_back(in_stage("targets", [&] { return parse_real(t); }));
    zeta_sum += abs(zetas.back());
  }
  std::vector<Real> offsets;  // f_i of the fixed part of the planned divisor
  Real offset_max(0);
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& f = spec.forms[i];
    offsets.push_back(eval(fns[i], factor_small(f.b != 0 ? f.b : mpz_class(f.a * L))));
    offset_max = max(offset_max, abs(offsets.back()));
  }
  const Real need = zeta_sum + offset_max;

  // n_0 from the smallest primes above K_L.
  const auto& f0 = spec.forms[0];
  const Factorization fixed0 = factor_small(f0.b != 0 ? f0.b : mpz_class(f0.a * L));
  Factorization n0;
  Real value0 = eval(fns[0], fixed0);
  {
    constexpr std::uint64_t kLimit = 10'000'000;
    PrimeIterator it(K_L.get_ui() + 1, kLimit);
    double bits = 0;
    while (!(value0 > need)) {
      const std::uint64_t p = it.next();
      if (p == 0) {
        report.notes.push_back("n_0 construction: primes up to " + std::to_string(kLimit) + " cannot lift f_0 above " +
                               need.to_string(8));
        return report;
      }
      bits += std::log2(static_cast<double>(p));
      if (bits > spec.max_modulus_bits) {
        report.notes.push_back("n_0 construction: f_0 needs to exceed " + need.to_string(8) + " but n_0 passed " +
                               std::to_string(spec.max_modulus_bits) + " bits first (scale governor)");
        return report;
      }
      n0.add_prime(mpz_class(static_cast<unsigned long>(p)), 1);
      value0 += fns[0].prime_value(mpz_class(static_cast<unsigned long>(p)));
    }
  }
  const Real alpha0 = eval(fns[0], fixed0 * n0);
  std::vector<Real> gammas;
  Real alpha = alpha0;
  for (std::size_t i = 1; i <= k; ++i) {
    alpha = zetas[i - 1] + alpha;
    gammas.push_back(alpha - offsets[i - 1]);
    if (gammas.back().sign() <= 0) throw ConstructionError("internal: gamma_" + std::to_string(i) + " is not positive");
  }
  mpz_class K = K_L;
  if (n0.value() > 1) K = std::max(K, n0.factors().back().prime);
  std::vector<AdditiveFunction> chain_fns(fns.begin() + 1, fns.end());

  ParameterInput pin;
  pin.k = k;
  pin.delta = delta_min(chain_fns);
  pin.lambda_eff = lambda_eff(chain_fns, spec.gamma_assumed);
  pin.A = rule_count_A(chain_fns);
  pin.epsilon = spec.epsilon;
  pin.variant = k == 1 ? SieveVariant::Theorem2PrimeForm : SieveVariant::Theorem2;
  pin.elliott_halberstam = spec.elliott_halberstam;
  check_threshold(c, in_stage("parameters", [&] { return choose_parameters(pin); }).threshold, to_string(mode));
  const Plan plan = plan_and_build(spec, chain_fns, gammas, K, pin, report);
  const auto& cp = plan.params;
  const auto& pc = plan.choice;
  PrecisionScope scope(cp.precision);
  record_common(report, spec, cp, pc, K, L);
  report.parameters["n0"] = n0.value().get_str();
  report.parameters["alpha0"] = alpha0.to_string(20);

  if (!plan.built) return report;
  const Chains& chains = plan.chains;
  const std::string method = k == 1 ? "prime-form sieve" : "sieve";
  Certificate tmpl = base_certificate(mode, method, spec, fns, report);
  for (std::size_t i = 1; i <= k; ++i) tmpl.records.push_back({i, i, i - 1, spec.targets[i - 1], "", "", "", mode != Mode::Erdos});
  if (mode == Mode::Erdos) {
    const auto h = detail::multiplicative_partner(fns[1].name());
    tmpl.exact = ExactRecord{h, 1, 0, 0, 1, 0, true};
  }

  for (std::size_t j = 0; j <= spec.depth; ++j) {
    DepthReport rep;
    rep.depth = j;
    for (const auto& seq : chains.sequences) rep.planned_errors.push_back(seq.snapshots[j].tau);
    std::vector<LinearForm> forms{{f0.a, f0.b, n0.value()}};
    mpz_class N = L * n0.value();
    std::vector<ArgPlan> args;
    args.push_back({0, {f0.b, f0.a}, form_label(f0.a, f0.b), fixed0 * n0, CofactorClaim::Rough});
    for (std::size_t i = 1; i <= k; ++i) {
      const auto& snap = chains.sequences[i - 1].snapshots[j];
      forms.push_back({spec.forms[i].a, spec.forms[i].b, snap.n});
      N *= snap.n;
      args.push_back({i, {spec.forms[i].b, spec.forms[i].a}, form_label(spec.forms[i].a, spec.forms[i].b),
                      planned_linear(spec.forms[i], L, snap.factorization), CofactorClaim::Rough});
    }
    if (governed(spec, N, j, report)) break;
    SieveSetup setup;
    setup.system = in_stage("assemble", [&] { return assemble_system(forms, L); });
    setup.sieve_system = setup.system;
    setup.config = finish_config(spec, pc.config, setup.system.N());
    if (k == 1) {
      const auto& cof1 = setup.system.cofactors[1];
      setup.config.require_prime_form = PrimeForm{cof1.coeffs.at(1), cof1.coeffs.at(0)};
      setup.sieve_system.cofactors.resize(1);
      args[1].claim = CofactorClaim::Prime;
    }
    in_stage("search", [&] { search_depth(spec, tmpl, fns, c, args, setup, rep, report); });
    report.depths.push_back(std::move(rep));
    report.effective_depth = j;
  }
  note_empty(report);
  return report;
}

}  // namespace

SolveReport solve_theorem2(const ProblemSpec& spec) { return run_theorem2(spec, Mode::Theorem2); }

SolveReport solve_poly(const ProblemSpec& spec) {
  SolveReport report;
  report.mode = Mode::Poly;
  if (spec.functions.size() != 1) throw ParameterRejected("poly needs exactly one function (sigma or totient)");
  const auto f = in_stage("functions", [&] { return spec.registry.lookup(canonical_function(spec.functions[0])); });
  const std::string h = detail::multiplicative_partner(f.name());
  if (h.empty() || !f.expression().empty()) throw ParameterRejected("poly supports h = sigma or totient only");
  const mpq_class c = claimed_c(spec);
  if (spec.targets.size() > 1) throw ParameterRejected("poly takes a single zeta");
  const std::string zeta_text = spec.targets.empty() ? "0" : spec.targets[0];
  const Real zeta = in_stage("targets", [&] { return parse_real(zeta_text); });

  // n_0 over primes = 1, 3 (mod 8) until zeta + f(2 n_0) > 0.
  Factorization n0;
  Real value = f.prime_value(2);
  {
    constexpr std::uint64_t kLimit = 10'000'000;
    PrimeIterator it(3, kLimit);
    double bits = 0;
    while (!(zeta + value > Real(0))) {
      const std::uint64_t p = it.next();
      if (p == 0) {
        report.notes.push_back("n_0 construction: primes = 1, 3 (mod 8) up to " + std::to_string(kLimit) + " are insufficient");
        return report;
      }
      if (p % 8 != 1 && p % 8 != 3) continue;
      bits += std::log2(static_cast<double>(p));
      if (bits > spec.max_modulus_bits) {
        report.notes.push_back("n_0 construction: n_0 passed " + std::to_string(spec.max_modulus_bits) +
                               " bits before zeta + f(2 n_0) turned positive (scale governor)");
        return report;
      }
      n0.add_prime(mpz_class(static_cast<unsigned long>(p)), 1);
      value += f.prime_value(mpz_class(static_cast<unsigned long>(p)));
    }
  }
  const Factorization planned0 = Factorization::from_factors({{2, 1}}) * n0;
  const Real alpha0 = eval(f, planned0);
  const std::vector<Real> gammas{zeta + alpha0};
  mpz_class K = 2;
  if (n0.value() > 1) K = std::max(K, n0.factors().back().prime);
  const std::vector<AdditiveFunction> chain_fns{f.with_filter(ResidueFilter::parse("4:1"))};

  ParameterInput pin;
  pin.k = 1;
  pin.delta = f.delta();
  pin.lambda_eff = lambda_eff(chain_fns, spec.gamma_prime_assumed);
  pin.A = 1;
  pin.epsilon = spec.epsilon;
  pin.variant = SieveVariant::Poly;
  check_threshold(c, in_stage("parameters", [&] { return choose_parameters(pin); }).threshold, "poly");
  const Plan plan = plan_and_build(spec, chain_fns, gammas, K, pin, report);
  const auto& cp = plan.params;
  const auto& pc = plan.choice;
  PrecisionScope scope(cp.precision);
  record_common(report, spec, cp, pc, K, mpz_class(2));
  report.parameters["n0"] = n0.value().get_str();

  if (!plan.built) return report;
  const Chains& chains = plan.chains;
  Certificate tmpl = base_certificate(Mode::Poly, "quadratic sieve", spec, {f}, report);
  tmpl.records.push_back({1, 1, 0, zeta_text, "", "", "", true});
  if (zeta.is_zero()) {
    tmpl.exact = ExactRecord{h, 1, 0, spec.multiplicative_shift, 2, 0, true};
  } else {
    report.notes.push_back("zeta != 0 on the log scale: the multiplicative difference is not small, only the log-scale check is certified");
  }
  for (std::size_t j = 0; j <= spec.depth; ++j) {
    DepthReport rep;
    rep.depth = j;
    const auto& snap = chains.sequences[0].snapshots[j];
    rep.planned_errors.push_back(snap.tau);
    const mpz_class N = 2 * n0.value() * snap.n;
    if (governed(spec, N, j, report)) break;
    SieveSetup setup;
    setup.system = in_stage("assemble", [&] { return assemble_quadratic(n0, snap.factorization, 0); });
    setup.sieve_system = setup.system;
    setup.config = finish_config(spec, pc.config, setup.system.N());
    std::vector<ArgPlan> args{{0, {2, 0, 1}, "m^2+2", planned0, CofactorClaim::Rough},
                              {0, {1, 0, 1}, "m^2+1", snap.factorization, CofactorClaim::Rough}};
    in_stage("search", [&] { search_depth(spec, tmpl, {f}, c, args, setup, rep, report); });
    report.depths.push_back(std::move(rep));
    report.effective_depth = j;
  }
  note_empty(report);
  return report;
}

std::vector<ErdosEntry> erdos_brute_force(std::string_view h, const mpq_class& c, std::uint64_t bound) {
  if (h != "sigma" && h != "totient") throw LookupError("erdos brute force supports sigma and totient");
  if (bound > 20'000'000) throw ResourceError("erdos brute-force bound above 2e7");
  const std::uint64_t top = bound + 1;
  std::vector<std::uint64_t> v(top + 1, 0);
  if (h == "sigma") {
    for (std::uint64_t d = 1; d <= top; ++d) {
      for (std::uint64_t m = d; m <= top; m += d) v[m] += d;
    }
  } else {
    for (std::uint64_t n = 0; n <= top; ++n) v[n] = n;
    for (std::uint64_t p = 2; p <= top; ++p) {
      if (v[p] != p) continue;  // composite: already reduced
      for (std::uint64_t m = p; m <= top; m += p) v[m] -= v[m] / p;
    }
  }
  std::vector<ErdosEntry> out;
  const double e = 1.0 - c.get_d();
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const std::uint64_t d = v[n + 1] > v[n] ? v[n + 1] - v[n] : v[n] - v[n + 1];
    // cheap screen first, exact comparison near the boundary
    if (d > 0) {
      const double lhs = std::log(static_cast<double>(d)), rhs = e * std::log(static_cast<double>(n));
      if (lhs > rhs + 1e-9) continue;
      if (lhs < rhs - 1e-9) {
        out.push_back({n, d});
        continue;
      }
    }
    if (detail::exact_below_power(mpz_class(static_cast<unsigned long>(d)), mpz_class(static_cast<unsigned long>(n)), c, 1)) {
      out.push_back({n, d});
    }
  }
  return out;
}

ErdosResult solve_erdos(const ProblemSpec& spec, std::uint64_t bound) {
  ErdosResult res;
  const mpq_class c = claimed_c(spec);
  const double G = spec.gamma_assumed;
  const double threshold = (1 - G) / (5 - 4 * G);
  check_threshold(c, threshold, "erdos");
  res.brute_totient = erdos_brute_force("totient", c, bound);
  res.brute_sigma = erdos_brute_force("sigma", c, bound);
  std::vector<std::string> names = spec.functions;
  if (names.empty()) names = {"sigma_log", "totient_log"};
  for (auto name : names) {
    name = canonical_function(name);
    if (detail::multiplicative_partner(name).empty()) throw ParameterRejected("erdos supports sigma and totient only");
    ProblemSpec s = spec;
    s.mode = Mode::Erdos;
    s.functions = {name, name};
    s.forms = {{1, 0}, {1, 1}};
    s.targets = {"0"};
    auto rep = run_theorem2(s, Mode::Erdos);
    const auto& stream = name == "sigma_log" ? res.brute_sigma : res.brute_totient;
    for (const auto& cert : rep.certificates) {
      if (cert.m > bound) continue;
      const bool found = std::any_of(stream.begin(), stream.end(), [&](const ErdosEntry& e) { return cert.m == e.n; });
      res.notes.push_back("cross-check m = " + cert.m.get_str() + (found ? ": present" : ": MISSING") + " in the brute-force stream");
    }
    res.pipelines.push_back(std::move(rep));
  }
  return res;
}

SolveReport solve(const ProblemSpec& spec) {
  switch (spec.mode) {
    case Mode::Theorem1:
      return solve_theorem1(spec);
    case Mode::Theorem2:
      return solve_theorem2(spec);
    case Mode::Poly:
      return solve_poly(spec);
    case Mode::Erdos: {
      ProblemSpec s = spec;
      if (s.functions.empty()) s.functions = {"sigma_log"};
      if (s.functions.size() != 1) throw ParameterRejected("erdos pipeline runs one function at a time");
      auto res = solve_erdos(s, 0);
      return std::move(res.pipelines.front());
    }
  }
  throw DomainError("unknown mode");
}

}  // namespace dioph
