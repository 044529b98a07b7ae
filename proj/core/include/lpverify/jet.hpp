#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lpverify/expr.hpp"

namespace lpv {

/// Upper bound on the manifold dimension handled by the engine.
inline constexpr std::size_t kMaxDim = 8;

/// A value together with its gradient with respect to the chart
/// coordinates. Gradients are seeded from symbolic derivatives and then
/// propagated exactly through the algebra below, so a Jet never carries
/// finite-difference error.
struct Jet {
  double value = 0.0;
  std::array<double, kMaxDim> grad{};

  Jet() = default;
  explicit Jet(double v) : value(v) {}

  Jet& operator+=(const Jet& o) {
    value += o.value;
    for (std::size_t i = 0; i < kMaxDim; ++i) grad[i] += o.grad[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    value -= o.value;
    for (std::size_t i = 0; i < kMaxDim; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  Jet& operator*=(double s) {
    value *= s;
    for (auto& g : grad) g *= s;
    return *this;
  }

  /// Derivative along a coordinate-basis direction.
  double directional(std::span<const double> coord_direction) const {
    double d = 0.0;
    for (std::size_t a = 0; a < coord_direction.size(); ++a) d += coord_direction[a] * grad[a];
    return d;
  }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator-(Jet a) { return a *= -1.0; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.value * b.value);
  for (std::size_t i = 0; i < kMaxDim; ++i) r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
  return r;
}

inline Jet operator/(const Jet& a, const Jet& b) {
  Jet r(a.value / b.value);
  const double inv2 = 1.0 / (b.value * b.value);
  for (std::size_t i = 0; i < kMaxDim; ++i) r.grad[i] = (a.grad[i] * b.value - a.value * b.grad[i]) * inv2;
  return r;
}

inline Jet sqrt(const Jet& a) {
  Jet r(std::sqrt(a.value));
  const double f = 0.5 / r.value;
  for (std::size_t i = 0; i < kMaxDim; ++i) r.grad[i] = a.grad[i] * f;
  return r;
}

/// An expression paired with its symbolic gradient.
class DiffExpr {
 public:
  DiffExpr() = default;
  DiffExpr(Expr f, std::size_t dim);

  const Expr& expr() const noexcept { return f_; }
  const Expr& partial(std::size_t a) const { return d_[a]; }
  bool is_constant() const noexcept { return constant_; }

  double eval(std::span<const double> x) const { return f_.eval(x); }
  Jet jet(std::span<const double> x) const;

 private:
  Expr f_;
  std::vector<Expr> d_;
  bool constant_ = true;
};

/// Frame coefficients of a vector field at a point, each with its
/// coordinate gradient.
using FieldJet = std::vector<Jet>;

/// Row-major square matrix of jets.
struct JetMatrix {
  std::size_t n = 0;
  std::vector<Jet> data;

  JetMatrix() = default;
  explicit JetMatrix(std::size_t dim) : n(dim), data(dim * dim) {}
  Jet& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  const Jet& operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

/// Solves A X = B column by column with partial pivoting on the values.
/// B is n x k in row-major order (`cols` = k). Throws ValidationError when
/// A is singular to working precision.
std::vector<Jet> solve(const JetMatrix& a, std::vector<Jet> b, std::size_t cols);

}  // namespace lpv
