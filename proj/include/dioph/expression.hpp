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

#include <memory>
#include <string>
#include <string_view>

#include "dioph/real.hpp"

namespace dioph {

/// Closed-form expression over the variables `p` and `v`.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'p' | 'v' | 'pi' | name '(' expr (',' expr)* ')' | '(' expr ')'
/// Functions: log, log1p, exp, sqrt, abs, pow(x, y).
class Expression {
 public:
  static Expression parse(std::string_view text);

  /// Evaluates at the current working precision. Throws ParseError if the expression
  /// references a variable the caller did not bind.
  Real evaluate(const Real* p, const Real* v) const;
  Real evaluate_constant() const { return evaluate(nullptr, nullptr); }

  const std::string& text() const { return text_; }
  bool uses_variables() const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Parses a real given either as a decimal literal or as a constant expression such as
/// "log(2)".
Real parse_real(std::string_view text);

}  // namespace dioph
