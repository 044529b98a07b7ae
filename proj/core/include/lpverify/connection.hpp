#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lpverify/frame.hpp"
#include "lpverify/jet.hpp"
#include "lpverify/report.hpp"
#include "lpverify/structure.hpp"

namespace lpv {

struct ConnectionParams {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class ConnectionKind {
  LeviCivita,
  GeneralizedSymmetric,
  /// Adds alpha eta(V) U only; not metric. Used as a negative control.
  NonMetricControl,
};

class ConnectionAt;

/// A linear connection on the frame bundle, described by the coefficient
/// functions nabla_{nu_i} nu_j = Gamma^k_ij nu_k. Cheap to copy.
class Connection {
 public:
  static Connection levi_civita(StructurePtr st);
  static Connection generalized(StructurePtr st, ConnectionParams params);
  static Connection non_metric_control(StructurePtr st, double alpha);

  ConnectionKind kind() const noexcept { return kind_; }
  const ConnectionParams& params() const noexcept { return params_; }
  const LPStructure& structure() const noexcept { return *st_; }
  const StructurePtr& structure_ptr() const noexcept { return st_; }

  /// Coefficients at p (throws DomainError outside the domain).
  ConnectionAt at(const Point& p) const;
  ConnectionAt at(const LocalFrame& frame) const;

 private:
  Connection(StructurePtr st, ConnectionKind kind, ConnectionParams params)
      : st_(std::move(st)), kind_(kind), params_(params) {}

  StructurePtr st_;
  ConnectionKind kind_;
  ConnectionParams params_;
};

/// A connection evaluated at one point, with Gamma carried as jets so that
/// second covariant derivatives are exact.
class ConnectionAt {
 public:
  std::size_t dimension() const noexcept { return frame_.dimension(); }
  const LocalFrame& frame() const noexcept { return frame_; }
  const Jet& gamma(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t n = dimension();
    return gamma_[(i * n + j) * n + k];
  }

  /// nabla_U V for constant frame combinations.
  Eigen::VectorXd nabla(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// Same, as a field jet (V extended with constant coefficients).
  FieldJet nabla_jet(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// nabla_U Y for a field with point-dependent coefficients:
  /// sum_i U^i (nu_i(Y^k) + Y^j Gamma^k_ij).
  Eigen::VectorXd nabla(const Eigen::VectorXd& u, const FieldJet& y) const;

  /// nabla_U V - nabla_V U - [U, V].
  Eigen::VectorXd torsion(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// R(U,V)W = nabla_U nabla_V W - nabla_V nabla_U W - nabla_[U,V] W with
  /// U, V, W extended as constant-coefficient fields.
  Eigen::VectorXd riemann(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

 private:
  friend class Connection;
  explicit ConnectionAt(LocalFrame frame) : frame_(std::move(frame)) {}

  LocalFrame frame_;
  std::vector<Jet> gamma_;
};

/// Connection-independent formula tensors of the (alpha, beta) family, in
/// frame components at a point.
struct TorsionFormulas {
  /// alpha{eta(V)U - eta(U)V} + beta{eta(V)phi U - eta(U)phi V}
  static Eigen::VectorXd model(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v);
  /// alpha{eta(U)V - g(U,V)xi} + beta{eta(U)phi V - g(phi U,V)xi}
  static Eigen::VectorXd tprime(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v);
  /// alpha{eta(V)U - g(U,V)xi} + beta{eta(V)phi U - g(phi U,V)xi}
  static Eigen::VectorXd h(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v);
};

struct TorsionData {
  VectorValue torsion_value;
  VectorValue model_value;
  VectorValue tprime_value;
  /// (T(U,V) + T'(U,V) + T'(V,U)) / 2
  VectorValue h_value;
};

Connection levi_civita(const StructurePtr& st);
Connection generalized_connection(const StructurePtr& st, ConnectionParams params);

/// nabla_U V at p for fields with expression coefficients.
VectorValue covariant_derivative(const Connection& conn, const FrameField& u, const FrameField& v, const Point& p);

TorsionData torsion(const Connection& conn, const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Point& p);

/// max |X g(Y,Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z)| over seeded samples.
double metric_compatibility_residual(const Connection& conn, std::uint64_t seed, std::size_t count);

/// Suite "connection": Levi-Civita torsion and metricity, metricity of the
/// (alpha, beta) connection, nabla-bar - nabla = H, and the semi/quarter
/// symmetric specialisations when (alpha, beta) is (1,0) or (0,1).
IdentityReport connection_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                    std::size_t count, double tolerance = 1e-9);

/// Suite "torsion": torsion equals the model, T' duality
/// g(T'(U,V),W) = g(T(W,U),V), and H = (T + T'(U,V) + T'(V,U))/2.
IdentityReport torsion_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                 std::size_t count, double tolerance = 1e-9);

/// Suite "proposition": direct nabla-bar of phi, xi, eta against the closed
/// forms. Ids: nabla_bar_phi, nabla_bar_xi, nabla_bar_eta.
IdentityReport proposition_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                     std::size_t count, double tolerance = 1e-9);

}  // namespace lpv
