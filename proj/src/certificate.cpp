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

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "assess.hpp"
#include "dioph/errors.hpp"
#include "dioph/pipeline.hpp"

namespace dioph {

using json = nlohmann::ordered_json;

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Theorem1:
      return "theorem1";
    case Mode::Theorem2:
      return "theorem2";
    case Mode::Erdos:
      return "erdos";
    case Mode::Poly:
      return "poly";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "theorem1") return Mode::Theorem1;
  if (text == "theorem2") return Mode::Theorem2;
  if (text == "erdos") return Mode::Erdos;
  if (text == "poly") return Mode::Poly;
  throw ParseError("unknown mode '" + std::string(text) + "'");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  auto bad = [&]() { return ParseError("not a rational number: '" + std::string(text) + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    try {
      mpq_class q(s);
      if (q.get_den() == 0) throw bad();
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw bad();
    }
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw bad();
    ++pos;
    std::size_t used = 0;
    long ex = 0;
    try {
      ex = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + used != s.size() || std::abs(ex) > 10000) throw bad();
    scale += ex;
  }
  mpz_class num(digits);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
  mpq_class q = scale >= 0 ? mpq_class(num * pow10) : mpq_class(num, pow10);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

mpz_class multiplicative_value(std::string_view h, const Factorization& fac) {
  if (!fac.complete()) throw IncompleteFactorization("multiplicative value needs a complete factorization");
  mpz_class out = 1;
  for (const auto& pp : fac.factors()) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    if (h == "sigma") {
      out *= (pe * pp.prime - 1) / (pp.prime - 1);
    } else if (h == "totient") {
      out *= pe / pp.prime * (pp.prime - 1);
    } else {
      throw LookupError("no multiplicative function '" + std::string(h) + "'");
    }
  }
  return out;
}

namespace detail {

namespace {

Real margin_at(long prec, const Real& scale) { return Real::two_pow(-(prec - 24)) * (Real(1) + abs(scale)); }

}  // namespace

Cmp below_power(const Real& x, const mpz_class& m, const mpq_class& c, long e) {
  if (x.sign() < 0) throw DomainError("below_power needs x >= 0");
  if (m < 2) throw DomainError("below_power needs m >= 2");
  if (x.is_zero()) return Cmp::Less;
  const long prec = working_precision();
  const Real rhs = (Real(e) - Real(c)) * log(m);
  const Real lhs = log(x);
  const Real margin = margin_at(prec, rhs) + margin_at(prec, lhs);
  if (lhs + margin < rhs) return Cmp::Less;
  if (lhs - margin > rhs) return Cmp::NotLess;
  return Cmp::Unclear;
}

bool exact_below_power(const mpz_class& d, const mpz_class& m, const mpq_class& c, long e) {
  if (m < 1) throw DomainError("exact_below_power needs m >= 1");
  // c = p/q: |d|^q < m^(e q - p)
  const mpz_class& p = c.get_num();
  const mpz_class& q = c.get_den();
  if (!q.fits_ulong_p() || !p.fits_slong_p() || q > 100000) throw UnsupportedInput("exponent denominator too large");
  const mpz_class rhs_exp = e * q - p;
  mpz_class lhs;
  mpz_class ad = abs(d);
  mpz_pow_ui(lhs.get_mpz_t(), ad.get_mpz_t(), q.get_ui());
  mpz_class rhs = 1;
  if (rhs_exp >= 0) {
    mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), rhs_exp.get_ui());
  } else {
    mpz_class extra;
    const mpz_class neg = -rhs_exp;
    mpz_pow_ui(extra.get_mpz_t(), m.get_mpz_t(), neg.get_ui());
    lhs *= extra;
  }
  return lhs < rhs;
}

std::optional<Real> witnessed_exponent(const Real& x, const mpz_class& m, long e) {
  if (x.is_zero()) return std::nullopt;
  const Real lm = log(m);
  Real c = Real(e) - log(x) / lm;
  return c - margin_at(working_precision(), c) * Real(64);
}

std::string format_exponent(const std::optional<Real>& c) { return c ? c->to_string(12) : std::string("inf"); }

int record_digits(long precision_bits) { return std::max(30, static_cast<int>(precision_bits * 0.30103) - 3); }

mpz_class eval_poly(const std::vector<mpz_class>& coeffs, const mpz_class& m) {
  mpz_class out = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * m + *it;
  return out;
}

AdditiveFunction resolve_function(const FunctionRef& ref) {
  if (ref.expression.empty()) return builtin(ref.name);
  return AdditiveFunction::from_expression(ref.name, ref.expression, Regularity{});
}

std::string multiplicative_partner(const std::string& function_name) {
  if (function_name == "sigma_log") return "sigma";
  if (function_name == "totient_log") return "totient";
  return {};
}

Assessment assess(const Certificate& cert, const std::vector<AdditiveFunction>& fns, const std::vector<Factorization>& full,
                  const mpq_class& c) {
  Assessment a;
  for (std::size_t i = 0; i < cert.arguments.size(); ++i) a.f.push_back(eval(fns.at(cert.arguments[i].function), full.at(i)));
  bool ok = true;
  a.worst = Real(0);
  for (const auto& rec : cert.records) {
    RecordOutcome out;
    out.value = a.f.at(rec.plus);
    if (rec.minus) out.value -= a.f.at(*rec.minus);
    out.target = parse_real(rec.target_text);
    out.error = abs(out.value - out.target);
    out.cmp = below_power(out.error, cert.m, c, 0);
    a.worst = max(a.worst, out.error);
    const auto w = witnessed_exponent(out.error, cert.m, 0);
    if (w && (!a.c_star || *w < *a.c_star)) a.c_star = w;
    if (rec.required) {
      if (out.cmp == Cmp::Unclear) a.unclear = true;
      if (out.cmp != Cmp::Less) ok = false;
    }
    a.records.push_back(std::move(out));
  }
  bool records_required = false;
  for (const auto& rec : cert.records) records_required = records_required || rec.required;
  if (records_required && a.c_star && !(*a.c_star > Real(c))) ok = false;

  if (cert.exact) {
    const auto& ex = *cert.exact;
    const mpz_class d = multiplicative_value(ex.h, full.at(ex.plus)) - multiplicative_value(ex.h, full.at(ex.minus)) - ex.shift;
    a.exact_difference = d;
    a.exact_ok = exact_below_power(d, cert.m, c, ex.exponent);
    if (d != 0) a.exact_c_star = witnessed_exponent(Real(mpz_class(abs(d))), cert.m, ex.exponent);
    if (ex.required && !a.exact_ok) ok = false;
  }
  a.pass = ok;
  return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* kSchema = "dioph.certificate.v1";

std::string claim_name(CofactorClaim c) {
  switch (c) {
    case CofactorClaim::None:
      return "none";
    case CofactorClaim::Rough:
      return "rough";
    case CofactorClaim::Prime:
      return "prime";
  }
  return "none";
}

CofactorClaim parse_claim(const std::string& s) {
  if (s == "none") return CofactorClaim::None;
  if (s == "rough") return CofactorClaim::Rough;
  if (s == "prime") return CofactorClaim::Prime;
  throw ParseError("unknown cofactor claim '" + s + "'");
}

json factors_json(const std::vector<PrimePower>& fs) {
  json arr = json::array();
  for (const auto& pp : fs) arr.push_back(json::array({pp.prime.get_str(), pp.exponent}));
  return arr;
}

mpz_class parse_int(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + ": expected a decimal string");
  const auto s = j.get<std::string>();
  mpz_class out;
  if (s.empty() || out.set_str(s, 10) != 0) throw ParseError(std::string(what) + ": bad integer '" + s + "'");
  return out;
}

std::vector<PrimePower> parse_factors(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<PrimePower> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_number_unsigned()) throw ParseError(std::string(what) + ": bad entry");
    out.push_back({parse_int(e[0], what), e[1].get<unsigned>()});
  }
  return out;
}

json to_json(const Certificate& c) {
  json j;
  j["schema"] = kSchema;
  j["mode"] = to_string(c.mode);
  j["method"] = c.method;
  j["m"] = c.m.get_str();
  j["claimed_c"] = c.claimed_c;
  j["witnessed_c"] = c.witnessed_c;
  if (c.exact) j["exact_witnessed_c"] = c.exact_witnessed_c;
  j["precision_bits"] = c.precision_bits;
  json fns = json::array();
  for (const auto& f : c.functions) fns.push_back({{"name", f.name}, {"expression", f.expression}});
  j["functions"] = fns;
  json args = json::array();
  for (const auto& a : c.arguments) {
    json coeffs = json::array();
    for (const auto& x : a.coefficients) coeffs.push_back(x.get_str());
    args.push_back({{"label", a.label},
                    {"function", a.function},
                    {"coefficients", coeffs},
                    {"value", a.value.get_str()},
                    {"planned", a.planned.get_str()},
                    {"planned_factors", factors_json(a.planned_factors)},
                    {"cofactor", a.cofactor.get_str()},
                    {"cofactor_factors", factors_json(a.cofactor_factors)},
                    {"claim", claim_name(a.claim)}});
  }
  j["arguments"] = args;
  json recs = json::array();
  for (const auto& r : c.records) {
    json e{{"index", r.index}, {"plus", r.plus}};
    e["minus"] = r.minus ? json(*r.minus) : json(nullptr);
    e["target_text"] = r.target_text;
    e["target"] = r.target;
    e["value"] = r.value;
    e["error"] = r.error;
    e["required"] = r.required;
    recs.push_back(e);
  }
  j["records"] = recs;
  if (c.exact) {
    const auto& x = *c.exact;
    j["exact"] = {{"h", x.h},           {"plus", x.plus},
                  {"minus", x.minus},   {"shift", x.shift.get_str()},
                  {"exponent", x.exponent}, {"difference", x.difference.get_str()},
                  {"required", x.required}};
  }
  const auto& k = c.construction;
  j["construction"] = {{"depth", k.depth},
                       {"N", k.N.get_str()},
                       {"h", k.h.get_str()},
                       {"s", k.s.get_str()},
                       {"z", k.z},
                       {"range_start", k.range_start.get_str()},
                       {"range_count", k.range_count},
                       {"nominal_range", k.nominal_range.get_str()},
                       {"truncated", k.truncated}};
  json params = json::object();
  for (const auto& [key, value] : c.parameters) params[key] = value;
  j["parameters"] = params;
  return j;
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Certificate from_json(const json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  if (get<std::string>(j, "schema") != kSchema) throw ParseError("unsupported certificate schema");
  Certificate c;
  c.mode = parse_mode(get<std::string>(j, "mode"));
  c.method = get<std::string>(j, "method");
  c.m = parse_int(j.at("m"), "m");
  c.claimed_c = get<std::string>(j, "claimed_c");
  c.witnessed_c = get<std::string>(j, "witnessed_c");
  if (j.contains("exact_witnessed_c")) c.exact_witnessed_c = get<std::string>(j, "exact_witnessed_c");
  c.precision_bits = get<long>(j, "precision_bits");
  for (const auto& f : get<json>(j, "functions")) c.functions.push_back({get<std::string>(f, "name"), get<std::string>(f, "expression")});
  for (const auto& a : get<json>(j, "arguments")) {
    ArgumentEvidence e;
    e.label = get<std::string>(a, "label");
    e.function = get<std::size_t>(a, "function");
    for (const auto& x : get<json>(a, "coefficients")) e.coefficients.push_back(parse_int(x, "coefficients"));
    e.value = parse_int(a.at("value"), "value");
    e.planned = parse_int(a.at("planned"), "planned");
    e.planned_factors = parse_factors(get<json>(a, "planned_factors"), "planned_factors");
    e.cofactor = parse_int(a.at("cofactor"), "cofactor");
    e.cofactor_factors = parse_factors(get<json>(a, "cofactor_factors"), "cofactor_factors");
    e.claim = parse_claim(get<std::string>(a, "claim"));
    c.arguments.push_back(std::move(e));
  }
  for (const auto& r : get<json>(j, "records")) {
    TargetRecord t;
    t.index = get<std::size_t>(r, "index");
    t.plus = get<std::size_t>(r, "plus");
    if (r.contains("minus") && !r.at("minus").is_null()) t.minus = get<std::size_t>(r, "minus");
    t.target_text = get<std::string>(r, "target_text");
    t.target = get<std::string>(r, "target");
    t.value = get<std::string>(r, "value");
    t.error = get<std::string>(r, "error");
    t.required = get<bool>(r, "required");
    c.records.push_back(std::move(t));
  }
  if (j.contains("exact")) {
    const auto& x = j.at("exact");
    ExactRecord e;
    e.h = get<std::string>(x, "h");
    e.plus = get<std::size_t>(x, "plus");
    e.minus = get<std::size_t>(x, "minus");
    e.shift = parse_int(x.at("shift"), "shift");
    e.exponent = get<unsigned>(x, "exponent");
    e.difference = parse_int(x.at("difference"), "difference");
    e.required = get<bool>(x, "required");
    c.exact = e;
  }
  const auto& k = get<json>(j, "construction");
  c.construction.depth = get<std::size_t>(k, "depth");
  c.construction.N = parse_int(k.at("N"), "N");
  c.construction.h = parse_int(k.at("h"), "h");
  c.construction.s = parse_int(k.at("s"), "s");
  c.construction.z = get<std::uint64_t>(k, "z");
  c.construction.range_start = parse_int(k.at("range_start"), "range_start");
  c.construction.range_count = get<std::uint64_t>(k, "range_count");
  c.construction.nominal_range = parse_int(k.at("nominal_range"), "nominal_range");
  c.construction.truncated = get<bool>(k, "truncated");
  if (j.contains("parameters")) {
    for (const auto& [key, value] : j.at("parameters").items()) {
      if (!value.is_string()) throw ParseError("parameter '" + key + "' must be a string");
      c.parameters[key] = value.get<std::string>();
    }
  }
  return c;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace

std::string certificate_to_json(const Certificate& cert, int indent) { return to_json(cert).dump(indent); }

std::string certificates_to_json(const std::vector<Certificate>& certs, int indent) {
  json arr = json::array();
  for (const auto& c : certs) arr.push_back(to_json(c));
  return arr.dump(indent);
}

Certificate certificate_from_json(std::string_view text) { return from_json(parse_text(text)); }

std::vector<Certificate> certificates_from_json(std::string_view text) {
  const json j = parse_text(text);
  std::vector<Certificate> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(from_json(e));
  } else {
    out.push_back(from_json(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

mpz_class product_of(const std::vector<PrimePower>& fs) {
  mpz_class out = 1;
  for (const auto& pp : fs) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= pe;
  }
  return out;
}

bool close(const std::string& recorded, const Real& fresh, int digits, std::string* why) {
  Real r;
  try {
    r = Real::from_string(recorded);
  } catch (const ParseError&) {
    if (why) *why = "unparsable '" + recorded + "'";
    return false;
  }
  const Real tol = pow(Real(10), Real(-digits)) * max(Real(1), abs(fresh));
  if (abs(r - fresh) <= tol) return true;
  if (why) *why = "recorded " + recorded + ", recomputed " + fresh.to_string(digits + 4);
  return false;
}

}  // namespace

VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& options) {
  VerificationResult out;
  auto& bad = out.discrepancies;
  bool inconclusive = false;
  const long prec = std::max<long>(cert.precision_bits, 64);
  PrecisionScope scope(2 * prec);
  const int digits = detail::record_digits(prec) - options.slack_digits;

  mpq_class c;
  try {
    c = parse_rational(cert.claimed_c);
  } catch (const ParseError& e) {
    bad.push_back(std::string("claimed_c: ") + e.what());
    out.verdict = Verdict::Fail;
    return out;
  }
  if (cert.m < 2) {
    bad.push_back("m must be at least 2");
    out.verdict = Verdict::Fail;
    return out;
  }
  std::vector<AdditiveFunction> fns;
  for (const auto& ref : cert.functions) {
    try {
      fns.push_back(detail::resolve_function(ref));
    } catch (const Error& e) {
      bad.push_back("function '" + ref.name + "': " + e.what());
    }
  }
  if (!bad.empty() || cert.arguments.empty()) {
    if (cert.arguments.empty()) bad.push_back("no arguments");
    out.verdict = Verdict::Fail;
    return out;
  }

  // Structural evidence.
  std::vector<mpz_class> values;
  for (std::size_t i = 0; i < cert.arguments.size(); ++i) {
    const auto& a = cert.arguments[i];
    const std::string tag = "argument " + std::to_string(i) + " (" + a.label + ")";
    if (a.function >= fns.size()) bad.push_back(tag + ": function index out of range");
    const mpz_class v = detail::eval_poly(a.coefficients, cert.m);
    values.push_back(v);
    if (v != a.value) bad.push_back(tag + ": recorded value " + a.value.get_str() + " but the form gives " + v.get_str());
    if (v <= 0) bad.push_back(tag + ": argument is not positive");
    if (product_of(a.planned_factors) != a.planned) bad.push_back(tag + ": planned factors do not multiply to the planned part");
    if (product_of(a.cofactor_factors) != a.cofactor) bad.push_back(tag + ": cofactor factors do not multiply to the cofactor");
    if (a.planned * a.cofactor != v) bad.push_back(tag + ": evidence product mismatch (planned * cofactor != argument)");
    for (const auto* list : {&a.planned_factors, &a.cofactor_factors}) {
      for (const auto& pp : *list) {
        if (pp.exponent == 0 || pp.prime < 2 || !is_probable_prime(pp.prime, options.factor.seed)) {
          bad.push_back(tag + ": evidence factor " + pp.prime.get_str() + " is not a prime power");
        }
      }
    }
    if (a.claim == CofactorClaim::Rough) {
      for (const auto& pp : a.cofactor_factors) {
        if (pp.prime <= cert.construction.z) {
          bad.push_back(tag + ": cofactor has prime factor " + pp.prime.get_str() + " <= z = " +
                        std::to_string(cert.construction.z));
        }
      }
    } else if (a.claim == CofactorClaim::Prime) {
      if (a.cofactor_factors.size() != 1 || a.cofactor_factors[0].exponent != 1) bad.push_back(tag + ": cofactor is not prime");
    }
  }
  const auto& k = cert.construction;
  if (k.N > 0) {
    if (k.h + k.s * k.N != cert.m) bad.push_back("construction: m != h + s N");
    if (k.s < k.range_start || k.s >= k.range_start + k.range_count) bad.push_back("construction: s outside the recorded range");
  }
  for (const auto& r : cert.records) {
    if (r.plus >= cert.arguments.size() || (r.minus && *r.minus >= cert.arguments.size())) {
      bad.push_back("record " + std::to_string(r.index) + ": argument index out of range");
    }
  }
  if (cert.exact && (cert.exact->plus >= cert.arguments.size() || cert.exact->minus >= cert.arguments.size())) {
    bad.push_back("exact record: argument index out of range");
  }
  if (!bad.empty() && std::any_of(bad.begin(), bad.end(), [](const std::string& s) { return s.find("out of range") != std::string::npos; })) {
    out.verdict = Verdict::Fail;
    return out;
  }

  // Fresh factorizations, ignoring the evidence. Once the certificate is already
  // known to be broken, spend less effort.
  FactorOptions fo = options.factor;
  if (!bad.empty()) fo.rho_budget = std::min<std::uint64_t>(fo.rho_budget, 1'000'000);
  std::vector<Factorization> full;
  bool complete = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) {
      complete = false;
      break;
    }
    full.push_back(factorize(values[i], fo));
    if (!full.back().complete()) {
      complete = false;
      out.notes.push_back("argument " + std::to_string(i) + ": factorization effort exhausted");
    }
  }
  if (!complete) {
    out.verdict = bad.empty() ? Verdict::Inconclusive : Verdict::Fail;
    return out;
  }

  detail::Assessment a;
  try {
    a = detail::assess(cert, fns, full, c);
  } catch (const Error& e) {
    bad.push_back(std::string("evaluation: ") + e.what());
    out.verdict = Verdict::Fail;
    return out;
  }
  for (std::size_t i = 0; i < cert.records.size(); ++i) {
    const auto& r = cert.records[i];
    const auto& o = a.records[i];
    const std::string tag = "record " + std::to_string(r.index);
    std::string why;
    if (!close(r.target, o.target, digits, &why)) bad.push_back(tag + ": target mismatch: " + why);
    if (!close(r.value, o.value, digits, &why)) bad.push_back(tag + ": value mismatch: " + why);
    if (!close(r.error, o.error, digits, &why)) bad.push_back(tag + ": error mismatch: " + why);
    if (r.required) {
      if (o.cmp == detail::Cmp::NotLess) {
        bad.push_back(tag + ": inequality violated: error " + o.error.to_string(12) + " >= m^(-" + cert.claimed_c + ")");
      } else if (o.cmp == detail::Cmp::Unclear) {
        inconclusive = true;
        out.notes.push_back(tag + ": error is within rounding of the bound");
      }
    }
  }
  if (cert.exact) {
    const auto& x = *cert.exact;
    if (*a.exact_difference != x.difference) {
      bad.push_back("exact record: recorded difference " + x.difference.get_str() + ", recomputed " +
                    a.exact_difference->get_str());
    }
    if (x.required && !a.exact_ok) {
      bad.push_back("exact record: |" + x.h + " difference| = " + mpz_class(abs(*a.exact_difference)).get_str() +
                    " is not below m^(" + std::to_string(x.exponent) + " - " + cert.claimed_c + ")");
    }
    const std::string fresh = detail::format_exponent(a.exact_c_star);
    if (fresh == "inf" ? cert.exact_witnessed_c != "inf"
                       : (cert.exact_witnessed_c == "inf" ||
                          !close(cert.exact_witnessed_c, *a.exact_c_star, 8, nullptr))) {
      bad.push_back("exact witnessed exponent mismatch: recorded " + cert.exact_witnessed_c + ", recomputed " + fresh);
    }
  }
  {
    const std::string fresh = detail::format_exponent(a.c_star);
    const bool same = fresh == "inf" ? cert.witnessed_c == "inf"
                                     : (cert.witnessed_c != "inf" && close(cert.witnessed_c, *a.c_star, 8, nullptr));
    if (!same) bad.push_back("witnessed exponent mismatch: recorded " + cert.witnessed_c + ", recomputed " + fresh);
  }
  if (!a.pass && bad.empty() && !a.unclear) bad.push_back("claimed inequalities do not hold");
  if (!bad.empty()) {
    out.verdict = Verdict::Fail;
  } else if (inconclusive) {
    out.verdict = Verdict::Inconclusive;
  } else {
    out.verdict = Verdict::Pass;
  }
  return out;
}

}  // namespace dioph
