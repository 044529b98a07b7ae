#include <gtest/gtest.h>

#include "lpverify/connection.hpp"
#include "lpverify/errors.hpp"
#include "lpverify/structure.hpp"
#include "support.hpp"

using namespace lpv;
using testing_support::entry;
using testing_support::example3;
using testing_support::gating_failures;
using testing_support::pt;
using testing_support::vec;

TEST(Axioms, HoldOnTheExample) {
  const auto rep = verify_lp_axioms(build_example3(), 1, 64);
  EXPECT_TRUE(rep.passed());
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.status, Status::Pass) << e.id;
    EXPECT_LE(e.max_residual, 1e-12) << e.id;
  }
}

TEST(Axioms, EachCorruptionIsDetected) {
  const testing_support::Example3Perturbation cases[] = {{1e-3, 0, 0}, {0, 1e-3, 0}, {0, 0, 1e-3}};
  for (const auto& c : cases) {
    const auto rep = verify_lp_axioms(example3(c), 1, 64);
    EXPECT_GE(gating_failures(rep), 1u) << c.phi << " " << c.xi << " " << c.g;
  }
}

TEST(Axioms, RescalingInsideTheContactPlaneIsNotACorruption) {
  // g(nu_1, nu_1) = 1 + d is the example with nu_1 rescaled; all axioms
  // still hold exactly.
  testing_support::Example3Perturbation d;
  d.g11 = 1e-3;
  EXPECT_EQ(gating_failures(verify_lp_axioms(example3(d), 1, 64)), 0u);
}

TEST(Axioms, ClosednessCheckedOnlyWhenDeclared) {
  const auto st = build_example3();
  const auto open = LPStructure::create(st->spec_ptr(), {{Expr::constant(-1), Expr(), Expr()},
                                                         {Expr(), Expr::constant(-1), Expr()},
                                                         {Expr(), Expr(), Expr()}},
                                        {Expr(), Expr(), Expr::constant(1)}, false);
  EXPECT_EQ(entry(verify_lp_axioms(open, 1, 16), "eta_closed_2_10").status, Status::NotApplicable);
  EXPECT_EQ(entry(verify_lp_axioms(st, 1, 16), "eta_closed_2_10").status, Status::Pass);
}

TEST(Structure, FundamentalFormAndTrace) {
  const auto st = build_example3();
  const Point p = pt({0.3, -0.2, 0.1});
  EXPECT_DOUBLE_EQ(trace_phi(*st, p), -2.0);
  EXPECT_DOUBLE_EQ(phi_form(*st, vec({1, 0, 0}), vec({1, 0, 0}), p), -1.0);
  EXPECT_DOUBLE_EQ(phi_form(*st, vec({0, 0, 1}), vec({0, 0, 1}), p), 0.0);
  // Phi is symmetric
  const Eigen::VectorXd u = vec({0.2, -1.0, 0.7}), v = vec({1.5, 0.3, -0.4});
  EXPECT_NEAR(phi_form(*st, u, v, p), phi_form(*st, v, u, p), 1e-15);
  const PointStructure s(*st, p);
  EXPECT_DOUBLE_EQ(s.eta_of(s.xi), -1.0);
}

TEST(Structure, LeviCivitaCurvatureIdentities) {
  const auto st = build_example3();
  const auto rep = verify_lc_curvature_identities(st, Connection::levi_civita(st), 2, 32);
  EXPECT_TRUE(rep.passed());
  for (const auto& e : rep.entries) EXPECT_EQ(e.status, Status::Pass) << e.id;
}

TEST(Structure, RejectsShapeErrors) {
  const auto st = build_example3();
  EXPECT_THROW(LPStructure::create(st->spec_ptr(), {{Expr()}}, {Expr(), Expr(), Expr()}), ValidationError);
  EXPECT_THROW(LPStructure::create(st->spec_ptr(), {{Expr(), Expr(), Expr()}, {Expr(), Expr(), Expr()},
                                                    {Expr(), Expr(), Expr()}},
                                   {Expr(), Expr()}),
               ValidationError);
  EXPECT_THROW(LPStructure::create(nullptr, {}, {}), ValidationError);
}
