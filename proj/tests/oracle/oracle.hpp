#pragma once

// Brute-force reference geometry in the coordinate basis. Everything is
// built from plain C++ callables and central differences, so it shares no
// code with the library's frame/jet machinery.

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Geometry {
  /// Row i: coordinate components of frame field i.
  std::function<MatrixXd(const VectorXd&)> frame;
  /// g(nu_i, nu_j).
  MatrixXd metric;
  /// Frame matrix of phi (column j = phi nu_j) and frame components of xi.
  std::function<MatrixXd(const VectorXd&)> phi;
  std::function<VectorXd(const VectorXd&)> xi;
};

/// The three-dimensional example: nu_1 = e^z dy, nu_2 = e^z (dx + dy),
/// nu_3 = dz, g = diag(1, 1, -1), phi = diag(-1, -1, 0), xi = nu_3.
Geometry example3();

class Engine {
 public:
  Engine(Geometry geo, double alpha, double beta, double h = 1e-4);

  std::size_t dimension() const { return n_; }

  /// Frame <-> coordinate components at x.
  VectorXd to_coord(const VectorXd& x, const VectorXd& frame_v) const;
  VectorXd to_frame(const VectorXd& x, const VectorXd& coord_v) const;

  MatrixXd coord_metric(const VectorXd& x) const;
  /// Gamma^c_ab of the (alpha, beta) connection, gamma[c](a, b).
  std::vector<MatrixXd> christoffel(const VectorXd& x) const;

  /// nabla_{nu_i} nu_j in frame components.
  VectorXd nabla_frame(const VectorXd& x, std::size_t i, std::size_t j) const;
  /// [nu_i, nu_j] in frame components.
  VectorXd bracket_frame(const VectorXd& x, std::size_t i, std::size_t j) const;
  /// R(U,V)W for frame-component inputs, output in frame components.
  VectorXd riemann(const VectorXd& x, const VectorXd& u, const VectorXd& v, const VectorXd& w) const;
  /// S(U,V) = trace of W -> R(W,U)V.
  double ricci(const VectorXd& x, const VectorXd& u, const VectorXd& v) const;
  /// Torsion of the connection, frame components.
  VectorXd torsion(const VectorXd& x, const VectorXd& u, const VectorXd& v) const;

 private:
  std::vector<MatrixXd> lc_christoffel(const VectorXd& x) const;
  std::vector<MatrixXd> christoffel_partial(const VectorXd& x, std::size_t a) const;

  Geometry geo_;
  double alpha_, beta_, h_;
  std::size_t n_;
};

/// Second fundamental form of an immersion f: u -> x by brute force:
/// h(d_i f, d_j f) = normal part of (d_i d_j f + Gamma(d_i f, d_j f)) with
/// the Levi-Civita Gamma. Returns coordinate components.
VectorXd second_fundamental(const Engine& lc, const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& u,
                            std::size_t i, std::size_t j, double h = 1e-4);

}  // namespace oracle
