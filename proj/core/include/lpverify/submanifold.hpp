#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpverify/connection.hpp"
#include "lpverify/errors.hpp"
#include "lpverify/frame.hpp"
#include "lpverify/jet.hpp"
#include "lpverify/report.hpp"
#include "lpverify/structure.hpp"

namespace lpv {

class SubmanifoldError : public ValidationError {
 public:
  enum class Reason {
    BadEmbedding,
    DegenerateMetric,
    XiNotTangent,
    NotOrthogonal,
    DNotInvariant,
    DPerpNotTotallyReal,
    OrientationUndetermined,
  };

  SubmanifoldError(Reason reason, const std::string& message);
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

std::string_view to_string(SubmanifoldError::Reason r) noexcept;

enum class Orientation { XiHorizontal, XiVertical };
std::string_view to_string(Orientation o) noexcept;

struct EmbeddingSpec {
  StructurePtr ambient;
  /// Names of the m sub-coordinates.
  std::vector<std::string> coordinates;
  /// One expression per ambient coordinate, in the sub-coordinates.
  std::vector<Expr> map;
  /// m ambient fields (frame coefficients in the ambient coordinates) that
  /// are tangent along the image and span it.
  std::vector<FrameField> tangent_frame;
  /// Sub-coordinate ranges; empty means [-1, 1]^m.
  std::vector<Interval> domain;
};

/// D and D_perp as index lists into the tangent frame. Together they must
/// partition it. The orientation is derived from xi; a declared value is
/// checked against it.
struct DistributionSplit {
  std::vector<std::size_t> d;
  std::vector<std::size_t> d_perp;
  std::optional<Orientation> orientation;
};

/// Ambient vector split along the submanifold. For tangent input,
/// tangent = p_part + q_part; for normal input N, phi N = b_part + c_part.
struct SplitVector {
  Eigen::VectorXd tangent;
  Eigen::VectorXd normal;
  Eigen::VectorXd p_part;
  Eigen::VectorXd q_part;
  Eigen::VectorXd b_part;
  Eigen::VectorXd c_part;
};

/// Gauss/Weingarten data of one ambient connection. With the Levi-Civita
/// connection these are nabla', h, A_N and nabla-perp; with the (alpha, beta)
/// connection they are the barred objects.
struct SecondFundamental {
  Eigen::VectorXd induced;
  Eigen::VectorXd h;
  Eigen::VectorXd weingarten;
  Eigen::VectorXd normal_connection;
};

class Submanifold;
using SubmanifoldPtr = std::shared_ptr<const Submanifold>;

/// Pointwise data: tangent frame and its Gram matrix, projectors, normal and
/// mu bases. Vectors are in ambient frame components; "coefficients" are
/// components along the tangent frame.
class SubmanifoldAt {
 public:
  SubmanifoldAt(const Submanifold& sub, const Point& p);

  const Point& point() const noexcept { return point_; }
  const PointStructure& structure() const noexcept { return ps_; }
  const Eigen::MatrixXd& tangent_frame() const noexcept { return t_; }
  const Eigen::MatrixXd& normal_basis() const noexcept { return normal_; }
  const Eigen::MatrixXd& phi_d_perp_basis() const noexcept { return phi_dp_; }
  const Eigen::MatrixXd& mu_basis() const noexcept { return mu_; }

  /// Tangent-frame coefficients of the tangent part of v.
  Eigen::VectorXd coefficients(const Eigen::VectorXd& v) const;
  Eigen::VectorXd vector(const Eigen::VectorXd& coeffs) const { return t_ * coeffs; }
  Eigen::VectorXd tan(const Eigen::VectorXd& v) const { return t_ * coefficients(v); }
  Eigen::VectorXd nor(const Eigen::VectorXd& v) const { return v - tan(v); }
  Eigen::VectorXd p(const Eigen::VectorXd& v) const;
  Eigen::VectorXd q(const Eigen::VectorXd& v) const;
  /// Components along D (or D_perp) only, as tangent-frame coefficients.
  Eigen::VectorXd d_mask(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd d_perp_mask(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd b(const Eigen::VectorXd& n) const { return tan(ps_.phi_of(n)); }
  Eigen::VectorXd c(const Eigen::VectorXd& n) const { return nor(ps_.phi_of(n)); }
  SplitVector split(const Eigen::VectorXd& v) const;

  /// sum_i coeffs_i T_i with constant coefficients, as a field jet.
  FieldJet field(const Eigen::VectorXd& coeffs) const;
  /// The normal projection of the constant vector n, as a field jet; a
  /// normal field through n when n is normal at this point.
  FieldJet normal_field(const Eigen::VectorXd& n) const;
  FieldJet phi_field(const FieldJet& y) const;

 private:
  const Submanifold* sub_;
  Point point_;
  PointStructure ps_;
  JetMatrix phi_jet_;
  std::vector<FieldJet> t_jet_;
  Eigen::MatrixXd t_;
  Eigen::MatrixXd gram_inv_;
  Eigen::MatrixXd normal_;
  Eigen::MatrixXd phi_dp_;
  Eigen::MatrixXd mu_;
};

class Submanifold {
 public:
  /// Validates the embedding and the CR split on a deterministic sample of
  /// sub-points. Throws SubmanifoldError.
  static SubmanifoldPtr create(EmbeddingSpec emb, DistributionSplit split);

  const EmbeddingSpec& embedding() const noexcept { return emb_; }
  const LPStructure& ambient() const noexcept { return *emb_.ambient; }
  const StructurePtr& ambient_ptr() const noexcept { return emb_.ambient; }
  std::size_t dimension() const noexcept { return emb_.coordinates.size(); }
  std::size_t ambient_dimension() const noexcept { return emb_.ambient->dimension(); }
  const std::vector<std::size_t>& d() const noexcept { return split_.d; }
  const std::vector<std::size_t>& d_perp() const noexcept { return split_.d_perp; }
  Orientation orientation() const noexcept { return orientation_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }

  /// Image of sub-coordinates u.
  Point image(const std::vector<double>& u) const;
  SubmanifoldAt at(const std::vector<double>& u) const { return SubmanifoldAt(*this, image(u)); }

 private:
  Submanifold() = default;

  EmbeddingSpec emb_;
  DistributionSplit split_;
  Orientation orientation_ = Orientation::XiHorizontal;
  std::vector<Interval> domain_;
};

SubmanifoldPtr build_submanifold(EmbeddingSpec emb, DistributionSplit split);

/// The leaf {x = x0} of span{nu_1, nu_3} in the three-dimensional example,
/// with D = span{nu_1, nu_3} and D_perp = 0.
SubmanifoldPtr build_example3_leaf(double x0 = 0.0);

/// Sub-point u with image p. `x` is an ambient vector at p (tangent or not).
SplitVector split_tangent_normal(const Submanifold& sub, const Eigen::VectorXd& x, const std::vector<double>& u);

/// X, Y tangent, N normal; Y is extended with constant tangent-frame
/// coefficients and N through the normal projector.
SecondFundamental second_fundamental_form(const Submanifold& sub, const Connection& conn, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y, const Eigen::VectorXd& n,
                                          const std::vector<double>& u);

/// Suite "cr_structure".
IdentityReport cr_structure_residuals(const SubmanifoldPtr& sub, std::uint64_t seed, std::size_t count,
                                      double tolerance = 1e-9);
/// Suite "gauss_weingarten".
IdentityReport generalized_gauss_weingarten_residuals(const SubmanifoldPtr& sub, ConnectionParams params,
                                                      std::uint64_t seed, std::size_t count,
                                                      double tolerance = 1e-9);
/// Suite "integrability".
IdentityReport integrability_tests(const SubmanifoldPtr& sub, ConnectionParams params, std::uint64_t seed,
                                   std::size_t count, double tolerance = 1e-9);
/// Suite "lemma54".
IdentityReport lemma54_and_prop59_residuals(const SubmanifoldPtr& sub, ConnectionParams params, std::uint64_t seed,
                                            std::size_t count, double tolerance = 1e-9);

}  // namespace lpv
