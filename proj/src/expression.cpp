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

#include "dioph/expression.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "dioph/errors.hpp"

namespace dioph {

struct Expression::Node {
  enum class Kind { Number, VarP, VarV, Pi, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  std::string literal;  // Number text or function name
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, std::vector<NodePtr> children = {}, std::string literal = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->literal = std::move(literal);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (eat('+')) {
        lhs = make(Kind::Add, {lhs, term()});
      } else if (eat('-')) {
        lhs = make(Kind::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (eat('*')) {
        lhs = make(Kind::Mul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Kind::Div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Kind::Neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return make(Kind::Number, {}, std::string(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "p") return make(Kind::VarP);
      if (name == "v") return make(Kind::VarV);
      if (name == "pi") return make(Kind::Pi);
      static const std::vector<std::string> kUnary{"log", "log1p", "exp", "sqrt", "abs"};
      const bool is_unary = std::find(kUnary.begin(), kUnary.end(), name) != kUnary.end();
      if (!is_unary && name != "pow") fail("unknown identifier '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      std::vector<NodePtr> args{expr()};
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) fail("expected ')'");
      if (args.size() != (is_unary ? 1u : 2u)) fail("wrong argument count for " + name);
      return make(Kind::Call, std::move(args), name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Real eval_node(const Expression::Node& n, const Real* p, const Real* v) {
  auto arg = [&](std::size_t i) { return eval_node(*n.children[i], p, v); };
  switch (n.kind) {
    case Kind::Number:
      return Real::from_string(n.literal);
    case Kind::VarP:
      if (!p) throw ParseError("expression uses 'p' where no prime is bound");
      return *p;
    case Kind::VarV:
      if (!v) throw ParseError("expression uses 'v' where no exponent is bound");
      return *v;
    case Kind::Pi: {
      Real r;
      mpfr_const_pi(r.get(), MPFR_RNDN);
      return r;
    }
    case Kind::Neg:
      return -arg(0);
    case Kind::Add:
      return arg(0) + arg(1);
    case Kind::Sub:
      return arg(0) - arg(1);
    case Kind::Mul:
      return arg(0) * arg(1);
    case Kind::Div:
      return arg(0) / arg(1);
    case Kind::Pow:
      return pow(arg(0), arg(1));
    case Kind::Call:
      if (n.literal == "log") return log(arg(0));
      if (n.literal == "log1p") return log1p(arg(0));
      if (n.literal == "exp") return exp(arg(0));
      if (n.literal == "sqrt") return sqrt(arg(0));
      if (n.literal == "abs") return abs(arg(0));
      return pow(arg(0), arg(1));
  }
  return Real();
}

bool node_uses_variables(const Expression::Node& n) {
  if (n.kind == Kind::VarP || n.kind == Kind::VarV) return true;
  for (const auto& c : n.children) {
    if (node_uses_variables(*c)) return true;
  }
  return false;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

Real Expression::evaluate(const Real* p, const Real* v) const { return eval_node(*root_, p, v); }

bool Expression::uses_variables() const { return node_uses_variables(*root_); }

Real parse_real(std::string_view text) {
  const Expression e = Expression::parse(text);
  if (e.uses_variables()) throw ParseError("constant expected, got '" + std::string(text) + "'");
  return e.evaluate_constant();
}

}  // namespace dioph
