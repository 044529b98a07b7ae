#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpverify/expr.hpp"
#include "lpverify/jet.hpp"

namespace lpv {

/// A point of the chart, one value per coordinate.
struct Point {
  std::vector<double> coords;

  std::size_t size() const noexcept { return coords.size(); }
  std::span<const double> span() const noexcept { return coords; }
};

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

enum class Basis { Frame, Coordinate };

/// A tangent vector at a point, tagged with the basis of its components.
struct VectorValue {
  Eigen::VectorXd components;
  Basis basis = Basis::Frame;
};

/// What the manifest declares about the signature of the frame metric.
enum class SignatureClaim { Unspecified, Lorentzian, Riemannian };

/// A manifold given by one coordinate chart and a global frame
/// nu_1..nu_n whose coordinate components are expressions, together with
/// the constant matrix g(nu_i, nu_j).
class ManifoldSpec {
 public:
  struct Options {
    std::vector<Interval> domain;  // defaults to [-1, 1] per coordinate
    SignatureClaim claim = SignatureClaim::Unspecified;
    /// Points at which frame invertibility is checked at construction.
    std::size_t validation_points = 32;
  };

  /// `frame[i][a]` is coordinate component a of frame field i.
  /// Throws ValidationError on any dimension mismatch, an asymmetric or
  /// degenerate metric, a signature that contradicts `claim`, or a frame
  /// that is singular at one of the validation points.
  static std::shared_ptr<const ManifoldSpec> create(std::vector<std::string> coordinates,
                                                    std::vector<std::vector<Expr>> frame,
                                                    Eigen::MatrixXd metric, Options options);

  std::size_t dimension() const noexcept { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const noexcept { return coordinates_; }
  const Expr& frame_component(std::size_t field, std::size_t coord) const {
    return components_[field * dimension() + coord].expr();
  }
  const Eigen::MatrixXd& metric() const noexcept { return metric_; }
  const Eigen::MatrixXd& metric_inverse() const noexcept { return metric_inverse_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }

  /// True when the frame metric is diagonal with entries +-1.
  bool orthonormal() const noexcept { return !signature_.empty(); }
  /// epsilon_i = g(nu_i, nu_i) for orthonormal frames, empty otherwise.
  const std::vector<double>& signature() const noexcept { return signature_; }

  /// Throws DomainError unless `p` has the right length, finite entries,
  /// and lies in the domain box.
  void check_point(const Point& p) const;

  /// Frame components E(i, a) at p.
  Eigen::MatrixXd frame_matrix(const Point& p) const;

  /// Jets of the frame components and of their first partials:
  /// `e` is n x n (row i = field), `de[c]` holds the partials along
  /// coordinate c. Used to build structure functions with exact gradients.
  void frame_jets(const Point& p, JetMatrix& e, std::vector<JetMatrix>& de) const;

 private:
  ManifoldSpec() = default;

  std::vector<std::string> coordinates_;
  std::vector<DiffExpr> components_;        // [i * n + a]
  std::vector<DiffExpr> component_partials_;  // [(i * n + a) * n + c] = d_c E_i^a
  Eigen::MatrixXd metric_;
  Eigen::MatrixXd metric_inverse_;
  std::vector<Interval> domain_;
  std::vector<double> signature_;
};

using ManifoldPtr = std::shared_ptr<const ManifoldSpec>;

/// Geometry of the frame at one point: frame matrix, its inverse, and the
/// structure functions [nu_i, nu_j] = C^k_ij nu_k with exact coordinate
/// gradients.
class LocalFrame {
 public:
  LocalFrame(const ManifoldSpec& spec, const Point& p);

  std::size_t dimension() const noexcept { return n_; }
  const Point& point() const noexcept { return point_; }
  const Eigen::MatrixXd& frame_matrix() const noexcept { return e_; }
  const ManifoldSpec& spec() const noexcept { return *spec_; }

  const Jet& structure(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }

  /// nu_i(f) for a function known through its jet.
  double frame_derivative(std::size_t i, const Jet& f) const;
  /// U(f) for U given by constant frame components.
  double derivative(const Eigen::VectorXd& u, const Jet& f) const;

  Eigen::VectorXd to_coordinates(const Eigen::VectorXd& frame_components) const;
  Eigen::VectorXd to_frame(const Eigen::VectorXd& coordinate_components) const;

  /// Bracket of two constant frame combinations.
  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// Same, keeping the gradient of the (point-dependent) result.
  FieldJet bracket_jet(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// Bracket of fields with point-dependent frame coefficients:
  /// [X, Y]^k = X^i Y^j C^k_ij + X(Y^k) - Y(X^k).
  Eigen::VectorXd bracket(const FieldJet& x, const FieldJet& y) const;

  /// g(u, v) with frame components.
  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

 private:
  const ManifoldSpec* spec_;
  std::size_t n_;
  Point point_;
  Eigen::MatrixXd e_;
  Eigen::MatrixXd e_inv_;
  std::vector<Jet> c_;
};

/// A vector field given by frame coefficients that are expressions in the
/// chart coordinates: X = sum_i X^i nu_i.
class FrameField {
 public:
  FrameField() = default;
  FrameField(std::vector<Expr> coefficients, std::size_t dim);

  static FrameField basis(std::size_t index, std::size_t dim);
  static FrameField constant(const Eigen::VectorXd& components);

  std::size_t dimension() const noexcept { return coeffs_.size(); }
  const DiffExpr& coefficient(std::size_t i) const { return coeffs_[i]; }

  Eigen::VectorXd value(const Point& p) const;
  FieldJet jet(const Point& p) const;

  /// f X for a scalar expression f.
  FrameField scaled(const Expr& f) const;

 private:
  std::vector<DiffExpr> coeffs_;
};

/// Frame coefficients of a field as a constant-coefficient jet.
FieldJet constant_jet(const Eigen::VectorXd& components);
/// Values of a field jet.
Eigen::VectorXd values(const FieldJet& field);

/// [X, Y] at p from exact analytic derivatives, in frame components.
VectorValue lie_bracket(const ManifoldSpec& spec, const FrameField& x, const FrameField& y, const Point& p);

/// g(X, Y) at p; coordinate-basis inputs are converted through the frame.
double inner(const ManifoldSpec& spec, const VectorValue& x, const VectorValue& y, const Point& p);

/// X(f) at p using the symbolic derivative of f.
double directional_derivative(const ManifoldSpec& spec, const Expr& f, const FrameField& x, const Point& p);

/// Converts between bases at p.
VectorValue to_frame_basis(const ManifoldSpec& spec, const VectorValue& v, const Point& p);
VectorValue to_coordinate_basis(const ManifoldSpec& spec, const VectorValue& v, const Point& p);

}  // namespace lpv
