#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "lpverify/expr.hpp"
#include "lpverify/frame.hpp"
#include "lpverify/jet.hpp"
#include "lpverify/report.hpp"

namespace lpv {

class Connection;

/// The quadruple (phi, xi, eta, g) in frame components. eta is not stored:
/// eta(U) = g(U, xi).
class LPStructure {
 public:
  /// `phi[k][j]` is frame component k of phi(nu_j); `xi[k]` is frame
  /// component k of xi. Entries may depend on the coordinates.
  static std::shared_ptr<const LPStructure> create(ManifoldPtr spec, std::vector<std::vector<Expr>> phi,
                                                   std::vector<Expr> xi, bool eta_closed = false);

  const ManifoldSpec& spec() const noexcept { return *spec_; }
  const ManifoldPtr& spec_ptr() const noexcept { return spec_; }
  std::size_t dimension() const noexcept { return spec_->dimension(); }
  /// Declared closedness of eta; gates the (nabla eta) = Phi check.
  bool eta_closed() const noexcept { return eta_closed_; }
  bool constant() const noexcept { return constant_; }

  const Expr& phi_entry(std::size_t k, std::size_t j) const { return phi_[k * dimension() + j].expr(); }
  const Expr& xi_entry(std::size_t k) const { return xi_[k].expr(); }

  Eigen::MatrixXd phi(const Point& p) const;
  JetMatrix phi_jet(const Point& p) const;
  Eigen::VectorXd xi(const Point& p) const;
  FieldJet xi_jet(const Point& p) const;

 private:
  LPStructure() = default;

  ManifoldPtr spec_;
  std::vector<DiffExpr> phi_;  // [k * n + j]
  std::vector<DiffExpr> xi_;
  bool eta_closed_ = false;
  bool constant_ = true;
};

using StructurePtr = std::shared_ptr<const LPStructure>;

/// Structure tensors evaluated at one point; all vectors in frame
/// components.
struct PointStructure {
  Eigen::MatrixXd g;    // frame metric
  Eigen::MatrixXd phi;  // phi(k, j)
  Eigen::VectorXd xi;
  Eigen::VectorXd eta;  // covector: eta(U) = eta.dot(U)

  PointStructure(const LPStructure& st, const Point& p);

  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(g * v); }
  double eta_of(const Eigen::VectorXd& u) const { return eta.dot(u); }
  Eigen::VectorXd phi_of(const Eigen::VectorXd& u) const { return phi * u; }
  /// Phi(U, V) = g(phi U, V).
  double big_phi(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return inner(phi * u, v); }
  /// trace Phi = sum_ij g^{ij} Phi(nu_i, nu_j); for an orthonormal frame
  /// this is sum_i eps_i Phi(nu_i, nu_i).
  double trace_phi(const Eigen::MatrixXd& g_inverse) const;
};

/// The three-dimensional LP-Sasakian example: frame e^z d/dy,
/// e^z (d/dx + d/dy), d/dz on R^3 with g = diag(1, 1, -1),
/// phi nu_1 = -nu_1, phi nu_2 = -nu_2, phi nu_3 = 0, xi = nu_3.
StructurePtr build_example3();

/// Phi(U, V) = g(phi U, V) for frame-component vectors.
double phi_form(const LPStructure& st, const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Point& p);
double trace_phi(const LPStructure& st, const Point& p);

/// Structure axioms and the Levi-Civita identities that define the
/// LP-Sasakian class. Ids: eta_xi, phi_square, metric_compat_phi, nabla_xi,
/// nabla_phi, eta_closed_2_10, phi_xi_zero, eta_phi_zero.
IdentityReport verify_lp_axioms(const StructurePtr& st, std::uint64_t seed, std::size_t count,
                                double tolerance = 1e-9);

/// Curvature identities of the Levi-Civita connection. Ids: r_xi_u_v,
/// r_u_v_xi, s_u_xi, s_phi_phi.
IdentityReport verify_lc_curvature_identities(const StructurePtr& st, const Connection& lc, std::uint64_t seed,
                                              std::size_t count, double tolerance = 1e-9);

}  // namespace lpv
