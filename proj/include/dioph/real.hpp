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
#include <mpfr.h>

#include <string>
#include <string_view>

namespace dioph {

inline constexpr long kDefaultPrecisionBits = 256;

/// Mantissa size (bits) used by newly constructed Real values on this thread.
long working_precision();

/// Sets the working precision for the lifetime of the scope, restoring on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

enum class Round { Nearest, Up, Down };

/// Extended-precision real backed by MPFR. Binary operations produce a result at the
/// larger of the operand precisions; named static operations take a rounding direction.
class Real {
 public:
  Real();
  Real(long value);  // NOLINT(google-explicit-constructor)
  Real(int value) : Real(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  explicit Real(double value, long bits = working_precision());
  explicit Real(const mpz_class& value, long bits = working_precision());
  explicit Real(const mpq_class& value, long bits = working_precision());
  static Real from_string(std::string_view text, long bits = working_precision());
  static Real with_precision(long bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  long precision() const;
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const;
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 30) const;
  int sign() const;
  bool is_zero() const;
  bool is_finite() const;

  mpz_class ceil() const;
  mpz_class floor() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  static Real add(const Real& a, const Real& b, Round round);
  static Real sub(const Real& a, const Real& b, Round round);
  static Real mul(const Real& a, const Real& b, Round round);
  static Real div(const Real& a, const Real& b, Round round);
  static Real pow(const Real& base, const Real& exponent, Round round);
  /// 2^exponent, exact.
  static Real two_pow(long exponent);

 private:
  mpfr_t value_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator!=(const Real& a, const Real& b);

Real abs(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real log(const mpz_class& n);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace dioph
