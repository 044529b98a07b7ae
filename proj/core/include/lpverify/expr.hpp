#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpv {

/// Immutable scalar expression over coordinate variables.
///
/// Nodes: numeric constants, coordinate variables, + - * /, unary minus,
/// integer powers, and the functions exp, sin, cos, log. Every node type has
/// an exact derivative, so the set of expressions is closed under
/// differentiation with respect to any coordinate.
class Expr {
 public:
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos, Log };

  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(std::size_t index, std::string name);

  /// Evaluates at `coords` (indexed by variable index). Throws DomainError
  /// for log of a non-positive value, division by zero, or a non-finite
  /// result.
  double eval(std::span<const double> coords) const;

  /// Exact partial derivative with respect to variable `index`.
  Expr derivative(std::size_t index) const;

  std::string to_string() const;

  Op op() const noexcept;
  bool is_constant() const noexcept { return op() == Op::Const; }
  /// Value of a constant node; 0 for anything else.
  double constant_value() const noexcept;
  /// Number of nodes in the tree.
  std::size_t size() const noexcept;
  /// Largest variable index referenced plus one (0 for constant trees).
  std::size_t arity() const noexcept;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, int exponent);
  friend Expr exp(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr log(const Expr& a);

  // Opaque tree node; defined in expr.cpp.
  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr log(const Expr& a);

/// Parses `text` with identifiers resolved against `variables` (index =
/// position). Grammar: decimal literals, identifiers, + - * / ^ with the
/// usual precedence (^ binds tightest and is right-associative), unary
/// minus, parentheses, and exp/sin/cos/log calls. The exponent of ^ must be
/// an integer constant, except that `e^expr` (with `e` not a coordinate)
/// means exp(expr). `pi` is the usual constant.
///
/// Throws ParseError with line 0 and the 1-based column of the offending
/// token.
Expr parse_expr(std::string_view text, std::span<const std::string> variables);

}  // namespace lpv
