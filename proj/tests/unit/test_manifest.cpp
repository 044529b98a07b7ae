#include <gtest/gtest.h>

#include <string>

#include "lpverify/errors.hpp"
#include "lpverify/manifest.hpp"
#include "lpverify/sampling.hpp"
#include "support.hpp"

using namespace lpv;

#ifndef LPVERIFY_MANIFEST_DIR
#error "LPVERIFY_MANIFEST_DIR must point at the shipped manifests"
#endif

namespace {

const std::string kHeader =
    "[manifold]\n"
    "dimension = 3\n"
    "coordinates = x, y, z\n";

std::string example(const std::string& frame_rows) {
  return kHeader + "[frame]\n" + frame_rows + "[metric]\n1, 0, 0\n0, 1, 0\n0, 0, -1\n";
}

}  // namespace

TEST(Manifest, ShippedExampleMatchesBuiltin) {
  const Manifest m = load_manifest(std::string(LPVERIFY_MANIFEST_DIR) + "/example3.manifest");
  ASSERT_TRUE(m.structure);
  EXPECT_FALSE(m.submanifold);
  const auto builtin = build_example3();
  EXPECT_EQ(m.spec->signature(), (std::vector<double>{1, 1, -1}));
  for (const Point& p : sample_points(*m.spec, 1, 8)) {
    EXPECT_LE((m.spec->frame_matrix(p) - builtin->spec().frame_matrix(p)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((m.structure->phi(p) - builtin->phi(p)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE((m.structure->xi(p) - builtin->xi(p)).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_TRUE(m.structure->eta_closed());
}

TEST(Manifest, ShippedLeaf) {
  const Manifest m = load_manifest(std::string(LPVERIFY_MANIFEST_DIR) + "/example3_leaf.manifest");
  ASSERT_TRUE(m.submanifold);
  EXPECT_EQ(m.submanifold->dimension(), 2u);
  EXPECT_EQ(m.submanifold->d(), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(m.submanifold->d_perp().empty());
  EXPECT_EQ(m.submanifold->orientation(), Orientation::XiHorizontal);
}

TEST(Manifest, ParseErrorPointsAtOffendingToken) {
  try {
    parse_manifest(example("0, e^^z, 0\ne^z, e^z, 0\n0, 0, 1\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Manifest, TwoFramesOnThreeCoordinates) {
  try {
    parse_manifest(example("0, e^z, 0\ne^z, e^z, 0\n"));
    FAIL() << "expected ValidationError";
  } catch (const ParseError&) {
    FAIL() << "expected a dimension mismatch, not a syntax error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos) << e.what();
  }
}

TEST(Manifest, SemanticErrors) {
  EXPECT_THROW(parse_manifest(kHeader + "[frame]\n1,0,0\n0,1,0\n0,0,1\n[metric]\n1,0,0\n0,1,0\n0,0,0\n"),
               ValidationError);
  EXPECT_THROW(parse_manifest(kHeader + "[frame]\n1,0,0\n0,1,0\n0,0,1\n"), ValidationError);
  EXPECT_THROW(parse_manifest(example("1,0,0\n0,1,0\n0,0,1\n") + "[bogus]\n"), ParseError);
  EXPECT_THROW(parse_manifest(example("1,0,0\n0,1,0\n0,0,1\n") + "[domain]\nz = 1, -1\n"), ParseError);
  EXPECT_THROW(parse_manifest("dimension = 3\n"), ParseError);
  EXPECT_THROW(load_manifest("/nonexistent/file.manifest"), Error);
}

TEST(Manifest, SubmanifoldErrorsSurface) {
  const std::string base = example("0, e^z, 0\ne^z, e^z, 0\n0, 0, 1\n") +
                           "[structure]\nphi = -1,0,0\nphi = 0,-1,0\nphi = 0,0,0\nxi = 0,0,1\n";
  const std::string flat =
      "[submanifold]\ncoordinates = x, y\nmap = x, y, 0\ntangent_frame = 1,0,0\ntangent_frame = 0,1,0\nD = 1, 2\n";
  try {
    parse_manifest(base + flat);
    FAIL() << "expected SubmanifoldError";
  } catch (const SubmanifoldError& e) {
    EXPECT_EQ(e.reason(), SubmanifoldError::Reason::XiNotTangent);
  }
  EXPECT_THROW(parse_manifest(base + "[submanifold]\ncoordinates = y, z\nmap = 0, y, z\ntangent_frame = 1,0,0\n"
                                     "tangent_frame = 0,0,1\nD = 1, 3\n"),
               Error);
}
