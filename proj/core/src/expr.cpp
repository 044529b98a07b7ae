#include "lpverify/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpverify/errors.hpp"

namespace lpv {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error([&] {
        std::ostringstream os;
        if (line > 0) os << "line " << line << ", ";
        os << "column " << column << ": " << message;
        return os.str();
      }()),
      detail_(message),
      line_(line),
      column_(column) {}

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  std::size_t index = 0;
  int exponent = 0;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index, std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const noexcept { return node_->op; }

double Expr::constant_value() const noexcept { return node_->op == Op::Const ? node_->value : 0.0; }

namespace {

// Builders fold constants and the additive/multiplicative identities so that
// repeated differentiation does not blow up the tree.
bool is_const(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Add;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Expr(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return -b;
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Sub;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Expr(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Mul;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Expr(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0)
    return Expr::constant(a.constant_value() / b.constant_value());
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Div;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Expr(std::move(n));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.op() == Expr::Op::Neg) return Expr(a.node_->lhs);
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Neg;
  n->lhs = a.node_;
  return Expr(std::move(n));
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant() && (base.constant_value() != 0.0 || exponent > 0))
    return Expr::constant(std::pow(base.constant_value(), exponent));
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Pow;
  n->lhs = base.node_;
  n->exponent = exponent;
  return Expr(std::move(n));
}

#define LPV_UNARY_BUILDER(fn, OP, fold)                       \
  Expr fn(const Expr& a) {                                     \
    if (a.is_constant()) return Expr::constant(fold(a.constant_value())); \
    auto n = std::make_shared<Expr::Node>();                   \
    n->op = Expr::Op::OP;                                      \
    n->lhs = a.node_;                                          \
    return Expr(std::move(n));                                 \
  }

LPV_UNARY_BUILDER(exp, Exp, std::exp)
LPV_UNARY_BUILDER(sin, Sin, std::sin)
LPV_UNARY_BUILDER(cos, Cos, std::cos)

#undef LPV_UNARY_BUILDER

Expr log(const Expr& a) {
  if (a.is_constant() && a.constant_value() > 0.0) return Expr::constant(std::log(a.constant_value()));
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Log;
  n->lhs = a.node_;
  return Expr(std::move(n));
}

namespace {

double eval_node(const Expr::Node& n, std::span<const double> x);

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Expr::Node& n, std::span<const double> x) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::Var:
      if (n.index >= x.size()) throw DomainError("variable '" + n.name + "' has no coordinate value");
      return x[n.index];
    case Op::Neg:
      return -eval_node(*n.lhs, x);
    case Op::Add:
      return checked(eval_node(*n.lhs, x) + eval_node(*n.rhs, x), "addition");
    case Op::Sub:
      return checked(eval_node(*n.lhs, x) - eval_node(*n.rhs, x), "subtraction");
    case Op::Mul:
      return checked(eval_node(*n.lhs, x) * eval_node(*n.rhs, x), "multiplication");
    case Op::Div: {
      const double den = eval_node(*n.rhs, x);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(eval_node(*n.lhs, x) / den, "division");
    }
    case Op::Pow: {
      const double b = eval_node(*n.lhs, x);
      if (b == 0.0 && n.exponent < 0) throw DomainError("zero raised to a negative power");
      return checked(std::pow(b, n.exponent), "power");
    }
    case Op::Exp:
      return checked(std::exp(eval_node(*n.lhs, x)), "exp");
    case Op::Sin:
      return std::sin(eval_node(*n.lhs, x));
    case Op::Cos:
      return std::cos(eval_node(*n.lhs, x));
    case Op::Log: {
      const double a = eval_node(*n.lhs, x);
      if (!(a > 0.0)) throw DomainError("log of non-positive value");
      return std::log(a);
    }
  }
  return 0.0;
}

}  // namespace

double Expr::eval(std::span<const double> coords) const { return eval_node(*node_, coords); }

Expr Expr::derivative(std::size_t index) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const:
      return constant(0.0);
    case Op::Var:
      return constant(n.index == index ? 1.0 : 0.0);
    case Op::Neg:
      return -Expr(n.lhs).derivative(index);
    case Op::Add:
      return Expr(n.lhs).derivative(index) + Expr(n.rhs).derivative(index);
    case Op::Sub:
      return Expr(n.lhs).derivative(index) - Expr(n.rhs).derivative(index);
    case Op::Mul: {
      const Expr a(n.lhs), b(n.rhs);
      return a.derivative(index) * b + a * b.derivative(index);
    }
    case Op::Div: {
      const Expr a(n.lhs), b(n.rhs);
      return (a.derivative(index) * b - a * b.derivative(index)) / pow(b, 2);
    }
    case Op::Pow: {
      const Expr a(n.lhs);
      return constant(n.exponent) * pow(a, n.exponent - 1) * a.derivative(index);
    }
    case Op::Exp:
      return *this * Expr(n.lhs).derivative(index);
    case Op::Sin:
      return cos(Expr(n.lhs)) * Expr(n.lhs).derivative(index);
    case Op::Cos:
      return -(sin(Expr(n.lhs)) * Expr(n.lhs).derivative(index));
    case Op::Log:
      return Expr(n.lhs).derivative(index) / Expr(n.lhs);
  }
  return constant(0.0);
}

namespace {

int precedence(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const Expr::Node& n, std::ostringstream& os);

void print_child(const Expr::Node& child, int parent_prec, bool right, std::ostringstream& os) {
  const int p = precedence(child.op);
  const bool negative_literal = child.op == Expr::Op::Const && child.value < 0.0;
  const bool paren = p < parent_prec || (right && p == parent_prec) || (negative_literal && parent_prec > 1);
  if (paren) os << '(';
  print(child, os);
  if (paren) os << ')';
}

void print(const Expr::Node& n, std::ostringstream& os) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::Const: {
      std::ostringstream num;
      num.precision(17);
      num << n.value;
      os << num.str();
      return;
    }
    case Op::Var:
      os << n.name;
      return;
    case Op::Neg:
      os << '-';
      print_child(*n.lhs, precedence(Op::Neg), false, os);
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const char sym = n.op == Op::Add ? '+' : n.op == Op::Sub ? '-' : n.op == Op::Mul ? '*' : '/';
      print_child(*n.lhs, precedence(n.op), false, os);
      os << ' ' << sym << ' ';
      print_child(*n.rhs, precedence(n.op), true, os);
      return;
    }
    case Op::Pow:
      print_child(*n.lhs, precedence(Op::Pow) + 1, false, os);
      os << '^';
      if (n.exponent < 0)
        os << '(' << n.exponent << ')';
      else
        os << n.exponent;
      return;
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
    case Op::Log: {
      const char* name = n.op == Op::Exp ? "exp" : n.op == Op::Sin ? "sin" : n.op == Op::Cos ? "cos" : "log";
      os << name << '(';
      print(*n.lhs, os);
      os << ')';
      return;
    }
  }
}

std::size_t count(const Expr::Node& n) {
  std::size_t c = 1;
  if (n.lhs) c += count(*n.lhs);
  if (n.rhs) c += count(*n.rhs);
  return c;
}

std::size_t max_var(const Expr::Node& n) {
  std::size_t m = n.op == Expr::Op::Var ? n.index + 1 : 0;
  if (n.lhs) m = std::max(m, max_var(*n.lhs));
  if (n.rhs) m = std::max(m, max_var(*n.rhs));
  return m;
}

}  // namespace

std::string Expr::to_string() const {
  std::ostringstream os;
  print(*node_, os);
  return os.str();
}

std::size_t Expr::size() const noexcept { return count(*node_); }

std::size_t Expr::arity() const noexcept { return max_var(*node_); }

}  // namespace lpv
