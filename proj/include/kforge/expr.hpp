#pragma once

#include <string>
#include <vector>

#include "kforge/rational.hpp"
#include "kforge/weyl.hpp"

namespace kforge {

/// Polynomial expression in x0..x{n-1}, i and the deformation parameter a.
///
///   expr   := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := nat ['/' nat] | 'i' | 'a' | 'x' nat | '(' expr ')'
///
/// A '/' is only part of a rational literal; there is no division and no
/// derivative symbol.
struct Expr {
  enum class Kind { Number, Imag, Param, Var, Neg, Add, Sub, Mul, Pow };

  Kind kind = Kind::Number;
  /// Number: the (non-negative) literal.
  Rational value;
  /// Var: coordinate index; Pow: exponent.
  int index = 0;
  std::vector<Expr> args;

  friend bool operator==(const Expr &, const Expr &) = default;
};

/// Throws SyntaxError, UnknownSymbol or IndexOutOfRange.
Expr parse_poly(const std::string &src, int dim);

/// Minimal-parenthesis text that parses back to the same tree.
std::string print_expr(const Expr &e);

/// Highest total degree in the coordinates.
int expr_degree(const Expr &e);

/// Evaluates the tree with a as the series variable, truncated at order.
Poly to_poly(const Expr &e, int dim, int order);

} // namespace kforge
