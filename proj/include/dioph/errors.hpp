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

#include <stdexcept>
#include <string>

namespace dioph {

/// Base for every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request exceeds a configured memory or effort budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A precondition on numeric input is violated (v0 >= 1, t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input outside what an operation supports (non-squarefree modulus, ...).
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class IncompatibleCongruences : public Error {
 public:
  IncompatibleCongruences(std::size_t first, std::size_t second, const std::string& what)
      : Error(what), first_(first), second_(second) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Evaluation of an additive function on a number whose factorization is not complete.
class IncompleteFactorization : public Error {
 public:
  using Error::Error;
};

/// No prime value of f lands in the requested window.
class NoPrimeFound : public Error {
 public:
  using Error::Error;
};

/// A constructive step (partition, base, refinement, congruence system) cannot be completed.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Hypotheses of a solver are not met by the problem description.
class ParameterRejected : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dioph
