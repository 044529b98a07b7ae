#include <gtest/gtest.h>

#include <cmath>

#include "lpverify/errors.hpp"
#include "lpverify/frame.hpp"
#include "lpverify/sampling.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lpv;
using testing_support::example3;
using testing_support::parse;
using testing_support::pt;
using testing_support::vec;

namespace {

const ManifoldSpec& spec3() {
  static const auto st = example3();
  return st->spec();
}

Eigen::VectorXd lie(const FrameField& x, const FrameField& y, const Point& p) {
  return lie_bracket(spec3(), x, y, p).components;
}

}  // namespace

TEST(ManifoldSpec, RejectsDimensionMismatch) {
  std::vector<std::vector<Expr>> two{{parse("1"), parse("0"), parse("0")}, {parse("0"), parse("1"), parse("0")}};
  EXPECT_THROW(ManifoldSpec::create({"x", "y", "z"}, two, Eigen::Matrix3d::Identity(), {}), ValidationError);
  std::vector<std::vector<Expr>> short_row{{parse("1"), parse("0")}, {parse("0"), parse("1")}, {parse("0"), parse("0")}};
  EXPECT_THROW(ManifoldSpec::create({"x", "y", "z"}, short_row, Eigen::Matrix3d::Identity(), {}), ValidationError);
}

TEST(ManifoldSpec, RejectsBadMetrics) {
  auto frame = [] {
    return std::vector<std::vector<Expr>>{{parse("1"), parse("0")}, {parse("0"), parse("1")}};
  };
  Eigen::Matrix2d degenerate;
  degenerate << 1, 1, 1, 1;
  EXPECT_THROW(ManifoldSpec::create({"x", "y"}, frame(), degenerate, {}), ValidationError);
  Eigen::Matrix2d asym;
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(ManifoldSpec::create({"x", "y"}, frame(), asym, {}), ValidationError);
  ManifoldSpec::Options lorentz;
  lorentz.claim = SignatureClaim::Lorentzian;
  EXPECT_THROW(ManifoldSpec::create({"x", "y"}, frame(), Eigen::Matrix2d::Identity(), lorentz), ValidationError);
  ManifoldSpec::Options riem;
  riem.claim = SignatureClaim::Riemannian;
  EXPECT_THROW(ManifoldSpec::create({"x", "y"}, frame(), Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix(), riem),
               ValidationError);
}

TEST(ManifoldSpec, RejectsSingularFrame) {
  std::vector<std::vector<Expr>> frame{{parse("x"), parse("0")}, {parse("0"), parse("1")}};
  EXPECT_THROW(ManifoldSpec::create({"x", "y"}, frame, Eigen::Matrix2d::Identity(), {}), ValidationError);
}

TEST(ManifoldSpec, ChecksPoints) {
  EXPECT_NO_THROW(spec3().check_point(pt({0.5, -0.5, 1.0})));
  EXPECT_THROW(spec3().check_point(pt({0.5, -0.5})), DomainError);
  EXPECT_THROW(spec3().check_point(pt({0.5, -0.5, 1.5})), DomainError);
  EXPECT_THROW(spec3().check_point(pt({NAN, 0, 0})), DomainError);
  EXPECT_TRUE(spec3().orthonormal());
  EXPECT_EQ(spec3().signature(), (std::vector<double>{1, 1, -1}));
}

TEST(Bracket, FrameStructureFunctions) {
  // [nu_1, nu_2] = 0, [nu_1, nu_3] = -nu_1, [nu_2, nu_3] = -nu_2
  for (const Point& p : sample_points(spec3(), 5, 8)) {
    auto b = [&](int i, int j) { return lie(FrameField::basis(i, 3), FrameField::basis(j, 3), p); };
    EXPECT_LT((b(0, 1) - vec({0, 0, 0})).norm(), 1e-14);
    EXPECT_LT((b(0, 2) - vec({-1, 0, 0})).norm(), 1e-14);
    EXPECT_LT((b(1, 2) - vec({0, -1, 0})).norm(), 1e-14);
    EXPECT_LT((b(2, 0) - vec({1, 0, 0})).norm(), 1e-14);
  }
}

TEST(Bracket, MatchesFiniteDifferenceOracle) {
  oracle::Engine o(oracle::example3(), 0, 0, 1e-5);
  for (const Point& p : sample_points(spec3(), 9, 6)) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.coords.data(), 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const Eigen::VectorXd got = lie(FrameField::basis(i, 3), FrameField::basis(j, 3), p);
        EXPECT_LT((got - o.bracket_frame(x, i, j)).norm(), 1e-8);
      }
  }
}

TEST(Bracket, JacobiIdentity) {
  const FrameField x({parse("x*y"), parse("1"), parse("sin(z)")}, 3);
  const FrameField y({parse("e^x"), parse("z^2"), parse("0")}, 3);
  const FrameField z({parse("0"), parse("cos(y)"), parse("x + z")}, 3);
  for (const Point& p : sample_points(spec3(), 3, 6)) {
    const LocalFrame f(spec3(), p);
    const FieldJet xj = x.jet(p), yj = y.jet(p), zj = z.jet(p);
    // [X,[Y,Z]] needs derivatives of [Y,Z]; get them from neighbouring
    // points with central differences of the exact bracket.
    auto bracket_field = [&](const FrameField& a, const FrameField& b, const FieldJet& c) {
      const double h = 1e-5;
      FieldJet ab(3);
      for (std::size_t k = 0; k < 3; ++k) ab[k] = Jet(lie(a, b, p)(k));
      for (std::size_t m = 0; m < 3; ++m) {
        Point pp = p, pm = p;
        pp.coords[m] += h;
        pm.coords[m] -= h;
        const Eigen::VectorXd d = (lie(a, b, pp) - lie(a, b, pm)) / (2 * h);
        for (std::size_t k = 0; k < 3; ++k) ab[k].grad[m] = d(k);
      }
      return f.bracket(c, ab);
    };
    const Eigen::VectorXd sum = bracket_field(y, z, xj) + bracket_field(z, x, yj) + bracket_field(x, y, zj);
    EXPECT_LT(sum.norm(), 1e-7);
  }
}

TEST(Bracket, LeibnizRule) {
  // [X, fY] = X(f) Y + f [X, Y]
  const FrameField x({parse("y"), parse("1"), parse("z")}, 3);
  const FrameField y({parse("1"), parse("x*z"), parse("e^y")}, 3);
  const Expr f = parse("x^2 + sin(y*z)");
  for (const Point& p : sample_points(spec3(), 4, 8)) {
    const Eigen::VectorXd lhs = lie(x, y.scaled(f), p);
    const Eigen::VectorXd rhs =
        directional_derivative(spec3(), f, x, p) * y.value(p) + f.eval(p.span()) * lie(x, y, p);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(DirectionalDerivative, MatchesFiniteDifferences) {
  const Expr f = parse("x*e^z + y^2");
  const FrameField u({parse("0.5"), parse("-1"), parse("2")}, 3);
  for (const Point& p : sample_points(spec3(), 2, 8)) {
    const Eigen::VectorXd dir = to_coordinate_basis(spec3(), {u.value(p), Basis::Frame}, p).components;
    const double h = 1e-6;
    Point pp = p, pm = p;
    for (std::size_t a = 0; a < 3; ++a) {
      pp.coords[a] += h * dir(a);
      pm.coords[a] -= h * dir(a);
    }
    const double fd = (f.eval(pp.span()) - f.eval(pm.span())) / (2 * h);
    EXPECT_NEAR(directional_derivative(spec3(), f, u, p), fd, 1e-7);
  }
}

TEST(Basis, RoundTripAndInner) {
  const Point p = pt({0.1, 0.2, 0.3});
  const VectorValue v{vec({1, 2, 3}), Basis::Frame};
  const VectorValue c = to_coordinate_basis(spec3(), v, p);
  EXPECT_NEAR(c.components(0), 2 * std::exp(0.3), 1e-14);
  EXPECT_NEAR(c.components(1), 3 * std::exp(0.3), 1e-14);
  EXPECT_NEAR(c.components(2), 3, 1e-14);
  EXPECT_LT((to_frame_basis(spec3(), c, p).components - v.components).norm(), 1e-14);
  EXPECT_NEAR(inner(spec3(), v, c, p), 1 + 4 - 9, 1e-13);
}
