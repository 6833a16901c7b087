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

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/additive.hpp"
#include "dioph/errors.hpp"
#include "dioph/expression.hpp"
#include "dioph/factor.hpp"
#include "dioph/greedy.hpp"
#include "dioph/ladder.hpp"
#include "dioph/pipeline.hpp"
#include "dioph/real.hpp"
#include "dioph/sieve.hpp"

using namespace dioph;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  long precision_bits = kDefaultPrecisionBits;
  std::uint64_t seed = 0x5eed;
  std::string config;
  std::string json_out;
  double gamma = 0.525;
  double gamma_prime = 0.53;
  bool eh = false;
};

// Exit codes.
constexpr int kFound = 0;
constexpr int kEmpty = 1;
constexpr int kRejected = 2;
constexpr int kInternal = 3;

FunctionRegistry registry_for(const Globals& g) {
  return g.config.empty() ? FunctionRegistry{} : FunctionRegistry::from_config_file(g.config);
}

std::string canonical(std::string name) {
  if (name == "sigma") return "sigma_log";
  if (name == "totient" || name == "phi") return "totient_log";
  return name;
}

std::string factored(const std::vector<PrimePower>& f) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& pp : f) {
    if (!out.empty()) out += " * ";
    out += pp.prime.get_str();
    if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

std::string factored(const Factorization& f) {
  std::string out = factored(f.factors());
  for (const auto& u : f.unfactored()) out += " * [" + u.get_str() + "]";
  return out;
}

void write_json(const Globals& g, const std::string& text) {
  if (g.json_out.empty()) return;
  std::ofstream out(g.json_out);
  if (!out) throw ResourceError("cannot write " + g.json_out);
  out << text << '\n';
}

// "a,b" or "a,b,n".
LinearForm parse_form(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3) throw ParseError("form must be a,b or a,b,n: " + text);
  try {
    LinearForm f{mpz_class(parts[0]), mpz_class(parts[1]), parts.size() == 3 ? mpz_class(parts[2]) : mpz_class(1)};
    return f;
  } catch (const std::invalid_argument&) {
    throw ParseError("form must hold integers: " + text);
  }
}

mpz_class parse_integer(const std::string& text) {
  try {
    return mpz_class(text);
  } catch (const std::invalid_argument&) {
    throw ParseError("not an integer: " + text);
  }
}

// Shared knobs for the ladder and construct subcommands.
struct ChainArgs {
  std::vector<std::string> functions{"sigma_log"};
  std::string K = "1";
  std::size_t depth = 4;
  std::optional<double> xi;
  std::optional<double> v0;
};

void add_chain_options(CLI::App* sub, ChainArgs& a) {
  sub->add_option("-f,--function", a.functions, "additive function names (builtin or from --config)");
  sub->add_option("-K", a.K, "primes <= K are excluded from the ladder");
  sub->add_option("-J,--depth", a.depth, "depth J")->capture_default_str();
  sub->add_option("--xi", a.xi, "ladder exponent (default 0.45 lambda / A)");
  sub->add_option("--v0", a.v0, "top of the ladder (default: halve t0/2 until the v0 conditions hold)");
}

struct ChainSetup {
  std::vector<AdditiveFunction> fns;
  PartitionRequest request;
  Real v0;
};

ChainSetup chain_setup(const Globals& g, const ChainArgs& a, std::size_t ladder_depth) {
  ChainSetup c;
  const auto reg = registry_for(g);
  for (const auto& name : a.functions) c.fns.push_back(reg.lookup(canonical(name)));
  double lam = 1, t0 = 1;
  for (const auto& f : c.fns) {
    lam = std::min(lam, f.lambda());
    t0 = std::min(t0, f.t0());
  }
  const mpz_class K = parse_integer(a.K);
  // rule count: A is derived by make_request; probe with a tiny xi first
  const auto probe = make_request(c.fns, K, ladder_depth, Real(1e-6));
  const double xi = a.xi.value_or(0.45 * lam / probe.A);
  c.request = make_request(c.fns, K, ladder_depth, Real(xi));
  c.v0 = Real(a.v0.value_or(0.5 * t0));
  if (!a.v0) {
    for (int i = 0; i < 60 && !check_v0(c.request, c.v0).pass(); ++i) c.v0 = c.v0 / Real(2);
  }
  return c;
}

int run_ladder(const Globals& g, const ChainArgs& a, const std::string& format) {
  const auto c = chain_setup(g, a, a.depth);
  const auto part = build_partition(c.request, c.v0);
  json doc;
  doc["xi"] = c.request.xi.to_string(20);
  doc["v0"] = c.v0.to_string(20);
  doc["A"] = c.request.A;
  doc["K"] = c.request.K.get_str();
  doc["v0_check"] = part.verdict.pass() ? "pass" : "fail";
  for (const auto& v : part.verdict.violations) doc["v0_violations"].push_back(v);
  for (const auto& v : part.ladder.values) doc["ladder"].push_back(v.to_string(20));
  for (const auto& e : part.entries) {
    doc["entries"].push_back({{"function", c.fns[e.function].name()},
                              {"level", e.level},
                              {"spare", e.spare},
                              {"prime", e.prime.get_str()},
                              {"value", e.value.to_string(20)},
                              {"lower", e.lower.to_string(20)},
                              {"upper", e.upper.to_string(20)}});
  }
  write_json(g, doc.dump(2));

  if (format == "text") {
    std::cout << "ladder xi=" << doc["xi"].get<std::string>() << " v0=" << doc["v0"].get<std::string>() << " A=" << c.request.A
              << " K=" << a.K << " v0_check=" << doc["v0_check"].get<std::string>() << '\n';
    for (std::size_t j = 0; j < part.ladder.values.size(); ++j) {
      std::cout << "level j=" << j << " v=" << part.ladder.values[j].to_string(20) << '\n';
    }
    for (const auto& e : part.entries) {
      std::cout << "entry function=" << c.fns[e.function].name() << " level=" << e.level << " spare=" << (e.spare ? 1 : 0)
                << " prime=" << e.prime << " value=" << e.value.to_string(20) << " lower=" << e.lower.to_string(20)
                << " upper=" << e.upper.to_string(20) << '\n';
    }
  } else {
    std::printf("xi = %s  v0 = %s  A = %d  v0 check: %s\n", c.request.xi.to_string(8).c_str(), c.v0.to_string(8).c_str(),
                c.request.A, part.verdict.pass() ? "pass" : "fail");
    for (const auto& v : part.verdict.violations) std::printf("  %s\n", v.c_str());
    std::printf("\n%4s  %-24s\n", "j", "v_j");
    for (std::size_t j = 0; j < part.ladder.values.size(); ++j) {
      std::printf("%4zu  %-24s\n", j, part.ladder.values[j].to_string(16).c_str());
    }
    std::printf("\n%-12s %4s %5s %14s  %-20s %-20s %-20s\n", "function", "j", "spare", "prime", "f(p)", "lower", "upper");
    for (const auto& e : part.entries) {
      std::printf("%-12s %4zu %5s %14s  %-20s %-20s %-20s\n", c.fns[e.function].name().c_str(), e.level, e.spare ? "yes" : "",
                  e.prime.get_str().c_str(), e.value.to_string(12).c_str(), e.lower.to_string(12).c_str(),
                  e.upper.to_string(12).c_str());
    }
  }
  return kFound;
}

int run_construct(const Globals& g, ChainArgs a, const std::string& gamma_text, std::optional<double> eta_in) {
  a.functions.resize(1);
  // eta and the ladder depth depend on each other through v0; settle v0 first.
  auto c = chain_setup(g, a, a.depth);
  const Real gamma = parse_real(gamma_text);
  if (gamma.sign() <= 0) throw ParameterRejected("gamma must be positive");
  const Real& xi = c.request.xi;
  const Real eta = eta_in ? Real(*eta_in) : Real(0.5) * min(min(c.v0, pow(Real(6), -Real(1) / xi)), gamma);
  const auto ev = check_eta(eta, c.v0, xi, std::vector<Real>{gamma});
  if (!ev.pass()) {
    std::string why;
    for (const auto& v : ev.violations) why += (why.empty() ? "" : "; ") + v;
    throw ParameterRejected("eta check failed: " + why);
  }
  PrecisionScope scope(std::max(g.precision_bits, required_precision(eta, xi, a.depth)));
  const std::size_t ladder_depth = required_ladder_depth(c.v0, xi, eta, a.depth);
  c.request = make_request(c.fns, c.request.K, ladder_depth, xi);
  const auto part = build_partition(c.request, c.v0);
  const auto seq = construct_sequence(c.fns[0], gamma, eta, part, 0, a.depth);

  json doc;
  doc["function"] = c.fns[0].name();
  doc["gamma"] = gamma.to_string(20);
  doc["eta"] = eta.to_string(20);
  doc["xi"] = xi.to_string(20);
  doc["v0"] = c.v0.to_string(20);
  doc["ladder_depth"] = ladder_depth;
  bool all_ok = true;
  for (const auto& s : seq.snapshots) {
    const bool ok = s.error_ok && s.tau_ok && s.size_ok && s.divides_next;
    all_ok = all_ok && ok;
    doc["levels"].push_back({{"j", s.j},
                             {"n", s.n.get_str()},
                             {"factored", factored(s.factorization)},
                             {"value", s.value.to_string(24)},
                             {"tau", s.tau.to_string(24)},
                             {"bound", s.error_bound.to_string(24)},
                             {"size_bound", s.size_bound.get_str()},
                             {"certified", ok}});
  }
  write_json(g, doc.dump(2));
  std::cout << "construct function=" << c.fns[0].name() << " gamma=" << gamma.to_string(20) << " eta=" << eta.to_string(20)
            << " xi=" << xi.to_string(12) << " v0=" << c.v0.to_string(12) << '\n';
  for (const auto& s : seq.snapshots) {
    std::cout << "level j=" << s.j << "\n  n = " << s.n << "\n  factored = " << factored(s.factorization)
              << "\n  f(n) = " << s.value.to_string(24) << "\n  tau = " << s.tau.to_string(24)
              << "\n  bound = " << s.error_bound.to_string(24) << "\n  certified = "
              << ((s.error_ok && s.tau_ok && s.size_ok && s.divides_next) ? "yes" : "no") << '\n';
  }
  return all_ok ? kFound : kEmpty;
}

struct SearchArgs {
  std::vector<std::string> forms;
  std::string L;
  std::optional<std::uint64_t> z;
  std::optional<double> mu;
  double epsilon = 0.05;
  std::optional<std::uint64_t> range;
  std::string start = "1";
  std::uint64_t segment_size = 1 << 16;
  bool prime_form = false;
  unsigned threads = 1;
  std::size_t max_survivors = 20;
};

int run_search(const Globals& g, const SearchArgs& a) {
  std::vector<LinearForm> forms;
  for (const auto& t : a.forms) forms.push_back(parse_form(t));
  if (forms.empty()) throw ParameterRejected("search needs at least one --form");
  mpz_class L;
  if (a.L.empty()) {
    std::vector<mpz_class> ab;
    for (const auto& f : forms) {
      ab.push_back(f.a);
      ab.push_back(f.b);
    }
    L = sieve_modulus_L(forms.size(), ab);
  } else {
    L = parse_integer(a.L);
  }
  const auto system = assemble_system(forms, L);

  ParameterInput pin;
  pin.epsilon = a.epsilon;
  pin.elliott_halberstam = g.eh;
  pin.lambda_eff = 1 - g.gamma;
  if (a.prime_form) {
    if (forms.size() != 2) throw ParameterRejected("--require-prime-form needs exactly two forms");
    pin.variant = SieveVariant::Theorem2PrimeForm;
    pin.k = 1;
  } else {
    pin.k = forms.size();
  }
  auto cfg = choose_parameters(pin).config;
  if (a.mu) cfg.mu = *a.mu;
  cfg.z = a.z.value_or(std::clamp<std::uint64_t>(cfg.z_for(system.N()), 2, std::uint64_t{1} << 24));
  cfg.segment_size = a.segment_size;
  cfg.threads = a.threads;

  LinearSystem sieve_system = system;
  if (a.prime_form) {
    const auto& last = system.cofactors.back();
    if (last.degree() != 1) throw ParameterRejected("prime-form cofactor is not linear");
    cfg.require_prime_form = PrimeForm{last.coeffs[1], last.coeffs[0]};
    sieve_system.cofactors.pop_back();
  }
  SearchRange range;
  range.start = parse_integer(a.start);
  if (a.range) {
    range.count = *a.range;
  } else {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, system.N().get_mpz_t());
    const double logN = static_cast<double>(e) + std::log2(d);
    const double bits = cfg.mu * logN;
    range.count = bits >= 20 ? std::uint64_t{1} << 20 : static_cast<std::uint64_t>(std::ceil(std::exp2(bits)));
  }
  cfg.max_survivors = a.max_survivors;

  SearchStats stats;
  const auto survivors = segmented_rough_search(sieve_system, cfg, range, &stats);

  FactorOptions fopt;
  fopt.seed = g.seed;
  json doc;
  doc["N"] = system.N().get_str();
  doc["h"] = system.h().get_str();
  doc["z"] = cfg.z;
  doc["mu"] = cfg.mu;
  doc["range_start"] = range.start.get_str();
  doc["range_count"] = range.count;
  doc["scanned"] = stats.scanned;
  doc["stopped_early"] = stats.stopped_early;
  std::cout << "system N=" << system.N() << " h=" << system.h() << " z=" << cfg.z << " range=[" << range.start << ", +"
            << range.count << ") scanned=" << stats.scanned << " survivors=" << survivors.size()
            << (stats.stopped_early ? " (stopped at --max-survivors)" : "") << '\n';
  for (const auto& sv : survivors) {
    json rec{{"s", sv.s.get_str()}, {"m", sv.m.get_str()}};
    std::cout << "survivor s=" << sv.s << " m=" << sv.m << '\n';
    for (std::size_t i = 0; i < system.cofactors.size(); ++i) {
      const mpz_class v = system.cofactors[i].value(sv.s);
      const auto fac = factorize(v, fopt);
      rec["cofactors"].push_back({{"label", system.cofactors[i].label},
                                  {"value", v.get_str()},
                                  {"factored", factored(fac)},
                                  {"complete", fac.complete()}});
      std::cout << "  cofactor " << system.cofactors[i].label << " = " << v << " = " << factored(fac)
                << (fac.complete() ? "" : " (incomplete)") << '\n';
    }
    doc["survivors"].push_back(rec);
  }
  write_json(g, doc.dump(2));
  return survivors.empty() ? kEmpty : kFound;
}

void print_report(const SolveReport& r) {
  std::printf("mode %s  threshold %.6f  predicted c %.6f  depth %zu (requested %zu)  precision %ld bits\n",
              to_string(r.mode).c_str(), r.threshold, r.predicted_c, r.effective_depth, r.requested_depth, r.precision_bits);
  if (!r.depths.empty()) {
    std::printf("%5s %6s %10s %10s %5s %10s %10s %9s %6s %14s\n", "depth", "N bits", "z", "range", "trunc", "scanned",
                "survivors", "examined", "certs", "best error");
    for (const auto& d : r.depths) {
      std::printf("%5zu %6zu %10llu %10llu %5s %10llu %10llu %9llu %6zu %14s\n", d.depth, d.modulus_bits,
                  static_cast<unsigned long long>(d.z), static_cast<unsigned long long>(d.range_count), d.truncated ? "yes" : "",
                  static_cast<unsigned long long>(d.scanned), static_cast<unsigned long long>(d.survivors),
                  static_cast<unsigned long long>(d.examined), d.certificates,
                  d.best_error ? d.best_error->to_string(6).c_str() : "-");
      if (!d.note.empty()) std::printf("      %s\n", d.note.c_str());
    }
  }
  for (const auto& cert : r.certificates) {
    std::printf("certificate depth %zu  method %s  m = %s  c* = %s%s%s\n", cert.construction.depth, cert.method.c_str(),
                cert.m.get_str().c_str(), cert.witnessed_c.c_str(), cert.exact ? "  exact c* = " : "",
                cert.exact ? cert.exact_witnessed_c.c_str() : "");
  }
  for (const auto& n : r.notes) std::printf("note: %s\n", n.c_str());
}

struct SolveArgs {
  std::string mode = "theorem1";
  std::vector<std::string> functions;
  std::vector<std::string> forms;
  std::vector<std::string> targets;
  std::string c = "0.05";
  std::size_t depth = 2;
  std::optional<double> xi, xi_prime, eta, v0, z_exp;
  double epsilon = 0.05;
  unsigned max_modulus_bits = 96;
  std::uint64_t max_range = std::uint64_t{1} << 20;
  std::optional<std::uint64_t> z;
  std::size_t per_depth = 1;
  std::size_t max_candidates = 2000;
  unsigned threads = 1;
  std::uint64_t bound = 100'000;
  std::string shift = "0";
};

int run_solve(const Globals& g, const SolveArgs& a) {
  ProblemSpec spec;
  spec.mode = parse_mode(a.mode);
  spec.functions = a.functions;
  for (const auto& t : a.forms) {
    const auto f = parse_form(t);
    spec.forms.push_back({f.a, f.b});
  }
  spec.targets = a.targets;
  spec.c = a.c;
  spec.depth = a.depth;
  spec.xi = a.xi;
  spec.xi_prime = a.xi_prime;
  spec.eta = a.eta;
  spec.v0 = a.v0;
  spec.epsilon = a.epsilon;
  spec.gamma_assumed = g.gamma;
  spec.gamma_prime_assumed = g.gamma_prime;
  spec.elliott_halberstam = g.eh;
  spec.max_modulus_bits = a.max_modulus_bits;
  spec.max_range = a.max_range;
  spec.z = a.z;
  spec.certificates_per_depth = a.per_depth;
  spec.max_candidates = a.max_candidates;
  spec.threads = a.threads;
  spec.precision_bits = g.precision_bits;
  spec.seed = g.seed;
  spec.multiplicative_shift = parse_integer(a.shift);
  spec.registry = registry_for(g);

  std::vector<Certificate> certs;
  if (spec.mode == Mode::Erdos) {
    const auto res = solve_erdos(spec, a.bound);
    for (const auto& [name, list] : {std::pair{"totient", &res.brute_totient}, std::pair{"sigma", &res.brute_sigma}}) {
      std::printf("brute force %s: %zu values n <= %llu with |h(n+1) - h(n)| < n^(1-c)", name, list->size(),
                  static_cast<unsigned long long>(a.bound));
      std::string head;
      for (std::size_t i = 0; i < list->size() && i < 8; ++i) {
        head += (i ? ", " : "") + std::to_string((*list)[i].n) + ":" + std::to_string((*list)[i].difference);
      }
      std::printf("  first n:diff %s\n", head.c_str());
    }
    for (const auto& r : res.pipelines) {
      const auto it = r.parameters.find("function");
      std::printf("\npipeline %s\n", it == r.parameters.end() ? "" : it->second.c_str());
      print_report(r);
      certs.insert(certs.end(), r.certificates.begin(), r.certificates.end());
    }
    for (const auto& n : res.notes) std::printf("note: %s\n", n.c_str());
  } else {
    const auto r = solve(spec);
    print_report(r);
    certs = r.certificates;
  }
  write_json(g, certificates_to_json(certs));
  return certs.empty() ? kEmpty : kFound;
}

int run_verify(const Globals& g, const std::vector<std::string>& files) {
  VerifyOptions opt;
  opt.factor.seed = g.seed ^ 0xa5a5;
  int worst = kFound;
  json doc = json::array();
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto certs = certificates_from_json(buf.str());
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto v = verify_certificate(certs[i], opt);
      std::printf("%s[%zu] m = %s: %s\n", path.c_str(), i, certs[i].m.get_str().c_str(), to_string(v.verdict).c_str());
      for (const auto& d : v.discrepancies) std::printf("  discrepancy: %s\n", d.c_str());
      for (const auto& n : v.notes) std::printf("  note: %s\n", n.c_str());
      doc.push_back({{"file", path},
                     {"index", i},
                     {"m", certs[i].m.get_str()},
                     {"verdict", to_string(v.verdict)},
                     {"discrepancies", v.discrepancies}});
      if (v.verdict != Verdict::Pass) worst = kEmpty;
    }
  }
  write_json(g, doc.dump(2));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dioph: constructive search for integers where additive functions hit prescribed values"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--precision-bits", g.precision_bits, "working precision in bits")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized factoring and primality tests")->capture_default_str();
  app.add_option("--config", g.config, "config file with custom additive functions");
  app.add_option("--json-out", g.json_out, "write machine-readable output to this path");
  app.add_option("--gamma-assumed", g.gamma, "assumed prime gap exponent")->capture_default_str();
  app.add_option("--gamma-prime-assumed", g.gamma_prime, "assumed gap exponent for primes = 1 mod 4")->capture_default_str();
  app.add_flag("--eh", g.eh, "use the Elliott-Halberstam parameterization");

  ChainArgs ladder_args;
  std::string ladder_format = "table";
  auto* ladder = app.add_subcommand("ladder", "print the interval ladder and its prime partition");
  add_chain_options(ladder, ladder_args);
  ladder->add_option("--format", ladder_format, "table or text")->check(CLI::IsMember({"table", "text"}))->capture_default_str();

  ChainArgs construct_args;
  std::string gamma_text;
  std::optional<double> eta;
  auto* construct = app.add_subcommand("construct", "build a greedy modulus chain for one function");
  add_chain_options(construct, construct_args);
  construct->add_option("--gamma", gamma_text, "target value (constant expression)")->required();
  construct->add_option("--eta", eta, "initial accuracy (default half of min(v0, 6^(-1/xi), gamma))");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "rough-cofactor search over a linear congruence system");
  search->add_option("--form", search_args.forms, "linear form a,b or a,b,n (a m + b divisible by n)")->required();
  search->add_option("--L", search_args.L, "row m = 0 mod L (default (2 k! prod a_i b_i)^2)");
  search->add_option("--z", search_args.z, "sieve bound (default N^c0)");
  search->add_option("--mu", search_args.mu, "range exponent: count = N^mu");
  search->add_option("--epsilon", search_args.epsilon, "sieve slack")->capture_default_str();
  search->add_option("--range", search_args.range, "number of s values (overrides --mu)");
  search->add_option("--start", search_args.start, "first s")->capture_default_str();
  search->add_option("--segment-size", search_args.segment_size, "sieve segment length")->capture_default_str();
  search->add_flag("--require-prime-form", search_args.prime_form, "last cofactor must be prime");
  search->add_option("--threads", search_args.threads, "worker threads")->capture_default_str();
  search->add_option("--max-survivors", search_args.max_survivors, "stop after this many survivors (0: all)")
      ->capture_default_str();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "run a full pipeline and emit certificates");
  solve_cmd->add_option("--mode", solve_args.mode, "theorem1, theorem2, erdos or poly")
      ->check(CLI::IsMember({"theorem1", "theorem2", "erdos", "poly"}))
      ->capture_default_str();
  solve_cmd->add_option("-f,--function", solve_args.functions, "additive functions in order");
  solve_cmd->add_option("--form", solve_args.forms, "forms a,b in order");
  solve_cmd->add_option("--target", solve_args.targets, "alpha_i (theorem1) or zeta_i (theorem2, poly)");
  solve_cmd->add_option("-c", solve_args.c, "claimed exponent, decimal or p/q")->capture_default_str();
  solve_cmd->add_option("-J,--depth", solve_args.depth, "depth J")->capture_default_str();
  solve_cmd->add_option("--xi", solve_args.xi, "ladder exponent");
  solve_cmd->add_option("--xi-prime", solve_args.xi_prime, "sieve exponent");
  solve_cmd->add_option("--eta", solve_args.eta, "initial accuracy");
  solve_cmd->add_option("--v0", solve_args.v0, "top of the ladder");
  solve_cmd->add_option("--epsilon", solve_args.epsilon, "sieve slack")->capture_default_str();
  solve_cmd->add_option("--max-modulus-bits", solve_args.max_modulus_bits, "scale governor")->capture_default_str();
  solve_cmd->add_option("--max-range", solve_args.max_range, "cap on s values per depth")->capture_default_str();
  solve_cmd->add_option("--z", solve_args.z, "sieve bound override");
  solve_cmd->add_option("--certificates-per-depth", solve_args.per_depth, "stop a depth after this many")->capture_default_str();
  solve_cmd->add_option("--max-candidates", solve_args.max_candidates, "survivors examined per depth")->capture_default_str();
  solve_cmd->add_option("--threads", solve_args.threads, "sieve threads")->capture_default_str();
  solve_cmd->add_option("--bound", solve_args.bound, "erdos: brute-force bound")->capture_default_str();
  solve_cmd->add_option("--shift", solve_args.shift, "poly: integer shift of the multiplicative check")->capture_default_str();

  std::vector<std::string> verify_files;
  auto* verify = app.add_subcommand("verify", "re-check certificate files independently");
  verify->add_option("files", verify_files, "certificate JSON files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kRejected;
  }

  try {
    PrecisionScope scope(g.precision_bits);
    if (*ladder) return run_ladder(g, ladder_args, ladder_format);
    if (*construct) return run_construct(g, construct_args, gamma_text, eta);
    if (*search) return run_search(g, search_args);
    if (*solve_cmd) return run_solve(g, solve_args);
    if (*verify) return run_verify(g, verify_files);
  } catch (const ParameterRejected& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const DomainError& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const LookupError& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const ParseError& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const UnsupportedInput& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
