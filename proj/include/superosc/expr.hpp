#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace superosc {

// Abstract syntax of the function expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)*
//   primary := number | 'x' | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Builtins: sin, cos, sinc (one argument). Projections: re, im.
// Catalog: g(a,N), F(A,delta), G(s,D), h(m,n), hs(s,m); the variable is implicit.

enum class ExprKind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Number;
  double number = 0.0;       // Number
  int exponent = 0;          // Pow
  std::string name;          // Call
  std::vector<ExprPtr> args; // operands or call arguments

  static ExprPtr make_number(double v);
  static ExprPtr make_variable();
  static ExprPtr make_neg(ExprPtr operand);
  static ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr make_pow(ExprPtr base, int exponent);
  static ExprPtr make_call(std::string name, std::vector<ExprPtr> args);
};

/// Structural equality (numbers compared bitwise-equal as doubles).
bool structurally_equal(const Expr& a, const Expr& b);

enum class CallClass { Builtin, Projection, Catalog, Unknown };
CallClass classify_call(std::string_view name);
int call_arity(std::string_view name);

/// True when the subtree does not depend on x (no variable, no catalog call).
bool is_constant(const Expr& e);

ExprPtr parse(std::string_view text);

/// Prints in the same grammar `parse` accepts; numbers round-trip exactly.
std::string print(const Expr& e);

}  // namespace superosc
