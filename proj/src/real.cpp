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

#include "dioph/real.hpp"

#include <algorithm>
#include <string>

#include "dioph/errors.hpp"

namespace dioph {

namespace {

thread_local long g_precision = kDefaultPrecisionBits;

mpfr_rnd_t to_mpfr(Round round) {
  switch (round) {
    case Round::Up:
      return MPFR_RNDU;
    case Round::Down:
      return MPFR_RNDD;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

long joint_precision(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

long working_precision() { return g_precision; }

PrecisionScope::PrecisionScope(long bits) : saved_(g_precision) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) {
    throw DomainError("precision out of range: " + std::to_string(bits));
  }
  g_precision = bits;
}

PrecisionScope::~PrecisionScope() { g_precision = saved_; }

Real::Real() {
  mpfr_init2(value_, g_precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value) {
  mpfr_init2(value_, g_precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, long bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, long bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, long bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real Real::from_string(std::string_view text, long bits) {
  Real r = with_precision(bits);
  std::string buffer(text);
  char* end = nullptr;
  mpfr_strtofr(r.value_, buffer.c_str(), &end, 10, MPFR_RNDN);
  if (buffer.empty() || end == buffer.c_str() || *end != '\0') {
    throw ParseError("not a decimal real: '" + buffer + "'");
  }
  return r;
}

Real Real::with_precision(long bits) {
  PrecisionScope scope(bits);
  return Real();
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

long Real::precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string Real::to_string(int digits) const {
  if (mpfr_zero_p(value_)) return "0";
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

int Real::sign() const { return mpfr_sgn(value_); }
bool Real::is_zero() const { return mpfr_zero_p(value_) != 0; }
bool Real::is_finite() const { return mpfr_number_p(value_) != 0; }

mpz_class Real::ceil() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDU);
  return out;
}

mpz_class Real::floor() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real Real::add(const Real& a, const Real& b, Round round) {
  Real r = with_precision(joint_precision(a, b));
  mpfr_add(r.value_, a.value_, b.value_, to_mpfr(round));
  return r;
}

Real Real::sub(const Real& a, const Real& b, Round round) {
  Real r = with_precision(joint_precision(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, to_mpfr(round));
  return r;
}

Real Real::mul(const Real& a, const Real& b, Round round) {
  Real r = with_precision(joint_precision(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, to_mpfr(round));
  return r;
}

Real Real::div(const Real& a, const Real& b, Round round) {
  Real r = with_precision(joint_precision(a, b));
  mpfr_div(r.value_, a.value_, b.value_, to_mpfr(round));
  return r;
}

Real Real::pow(const Real& base, const Real& exponent, Round round) {
  Real r = with_precision(joint_precision(base, exponent));
  mpfr_pow(r.value_, base.value_, exponent.value_, to_mpfr(round));
  return r;
}

Real Real::two_pow(long exponent) {
  Real r;
  mpfr_set_ui_2exp(r.value_, 1, exponent, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) { return Real::add(a, b, Round::Nearest); }
Real operator-(const Real& a, const Real& b) { return Real::sub(a, b, Round::Nearest); }
Real operator*(const Real& a, const Real& b) { return Real::mul(a, b, Round::Nearest); }
Real operator/(const Real& a, const Real& b) { return Real::div(a, b, Round::Nearest); }

Real operator-(const Real& a) {
  Real r(a);
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
bool operator!=(const Real& a, const Real& b) { return !(a == b); }

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log1p(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_log1p(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r = Real::with_precision(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) { return Real::pow(base, exponent, Round::Nearest); }

Real log(const mpz_class& n) { return log(Real(n)); }

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace dioph
