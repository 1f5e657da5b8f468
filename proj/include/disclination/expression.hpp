#pragma once
// Small expression language for user-supplied radial profiles f(r).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'pi' | 'r' | ('exp'|'sin'|'cos') '(' expr ')' | '(' expr ')'
//
// Derivatives with respect to r are formed symbolically.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "disclination/profile.hpp"

namespace disclination::expr {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos, Log };

struct Node {
  Op op;
  double value = 0.0;
  NodePtr lhs;
  NodePtr rhs;
};

inline NodePtr constant(double v) { return std::make_shared<const Node>(Node{Op::Const, v, {}, {}}); }
inline NodePtr variable() { return std::make_shared<const Node>(Node{Op::Var, 0.0, {}, {}}); }

inline bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

// Builders fold the trivial identities so derivatives stay compact.
inline NodePtr make(Op op, NodePtr a, NodePtr b = {}) {
  const bool ac = a && a->op == Op::Const;
  const bool bc = b && b->op == Op::Const;
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      if (ac && bc) return constant(a->value + b->value);
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      if (ac && bc) return constant(a->value - b->value);
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      if (ac && bc) return constant(a->value * b->value);
      break;
    case Op::Div:
      if (is_const(a, 0.0)) return constant(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Neg:
      if (ac) return constant(-a->value);
      break;
    default:
      break;
  }
  return std::make_shared<const Node>(Node{op, 0.0, std::move(a), std::move(b)});
}

inline double evaluate(const Node& n, double r) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return r;
    case Op::Add: return evaluate(*n.lhs, r) + evaluate(*n.rhs, r);
    case Op::Sub: return evaluate(*n.lhs, r) - evaluate(*n.rhs, r);
    case Op::Mul: return evaluate(*n.lhs, r) * evaluate(*n.rhs, r);
    case Op::Div: return evaluate(*n.lhs, r) / evaluate(*n.rhs, r);
    case Op::Pow: return std::pow(evaluate(*n.lhs, r), evaluate(*n.rhs, r));
    case Op::Neg: return -evaluate(*n.lhs, r);
    case Op::Exp: return std::exp(evaluate(*n.lhs, r));
    case Op::Sin: return std::sin(evaluate(*n.lhs, r));
    case Op::Cos: return std::cos(evaluate(*n.lhs, r));
    case Op::Log: return std::log(evaluate(*n.lhs, r));
  }
  return std::nan("");
}

inline bool depends_on_r(const Node& n) {
  if (n.op == Op::Var) return true;
  return (n.lhs && depends_on_r(*n.lhs)) || (n.rhs && depends_on_r(*n.rhs));
}

inline NodePtr differentiate(const NodePtr& n) {
  const NodePtr& a = n->lhs;
  const NodePtr& b = n->rhs;
  switch (n->op) {
    case Op::Const: return constant(0.0);
    case Op::Var: return constant(1.0);
    case Op::Add: return make(Op::Add, differentiate(a), differentiate(b));
    case Op::Sub: return make(Op::Sub, differentiate(a), differentiate(b));
    case Op::Mul:
      return make(Op::Add, make(Op::Mul, differentiate(a), b), make(Op::Mul, a, differentiate(b)));
    case Op::Div:
      return make(Op::Div,
                  make(Op::Sub, make(Op::Mul, differentiate(a), b),
                       make(Op::Mul, a, differentiate(b))),
                  make(Op::Mul, b, b));
    case Op::Neg: return make(Op::Neg, differentiate(a));
    case Op::Exp: return make(Op::Mul, n, differentiate(a));
    case Op::Sin: return make(Op::Mul, make(Op::Cos, a), differentiate(a));
    case Op::Cos: return make(Op::Neg, make(Op::Mul, make(Op::Sin, a), differentiate(a)));
    case Op::Log: return make(Op::Div, differentiate(a), a);
    case Op::Pow:
      if (!depends_on_r(*b)) {
        // d(a^c) = c a^(c-1) a'
        return make(Op::Mul, make(Op::Mul, b, make(Op::Pow, a, make(Op::Sub, b, constant(1.0)))),
                    differentiate(a));
      }
      // d(a^b) = a^b (b' log a + b a'/a)
      return make(Op::Mul, n,
                  make(Op::Add, make(Op::Mul, differentiate(b), make(Op::Log, a)),
                       make(Op::Div, make(Op::Mul, b, differentiate(a)), a)));
  }
  return constant(0.0);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    NodePtr n = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr n = parse_term();
    while (true) {
      if (accept('+')) n = make(Op::Add, n, parse_term());
      else if (accept('-')) n = make(Op::Sub, n, parse_term());
      else return n;
    }
  }

  NodePtr parse_term() {
    NodePtr n = parse_unary();
    while (true) {
      if (accept('*')) n = make(Op::Mul, n, parse_unary());
      else if (accept('/')) n = make(Op::Div, n, parse_unary());
      else return n;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Op::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc{}) fail("malformed number");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "r") return variable();
      if (name == "pi") return constant(std::numbers::pi);
      Op op;
      if (name == "exp") op = Op::Exp;
      else if (name == "sin") op = Op::Sin;
      else if (name == "cos") op = Op::Cos;
      else {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      if (!accept('(')) fail("expected '(' after function name");
      NodePtr arg = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return make(op, arg);
    }
    if (accept('(')) {
      NodePtr n = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline NodePtr parse(std::string_view text) { return Parser(text).parse(); }

/// Profile from an expression in r. f(0) is the expression evaluated at r = 0
/// unless given; f(infinity) must be declared.
inline ProfileFunction make_profile(const std::string& text, double f_at_infinity,
                                    std::optional<double> f_at_zero = std::nullopt) {
  const NodePtr f = parse(text);
  const NodePtr df = differentiate(f);
  const double f0 = f_at_zero ? *f_at_zero : evaluate(*f, 0.0);
  if (!std::isfinite(f0))
    throw ParseError("expression is not finite at r = 0; declare f(0) explicitly");
  return ProfileFunction(
      text, [f](double r) { return evaluate(*f, r); }, [df](double r) { return evaluate(*df, r); },
      f0, f_at_infinity);
}

}  // namespace disclination::expr
