#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lpverify/expr.hpp"
#include "lpverify/frame.hpp"
#include "lpverify/report.hpp"
#include "lpverify/structure.hpp"

namespace testing_support {

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  std::size_t i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline lpv::Point pt(std::initializer_list<double> v) { return lpv::Point{std::vector<double>(v)}; }

inline lpv::Expr parse(const std::string& text, const std::vector<std::string>& vars = {"x", "y", "z"}) {
  return lpv::parse_expr(text, vars);
}

/// The three-dimensional example, optionally with phi, xi or g perturbed.
struct Example3Perturbation {
  double phi = 0.0;  // added to phi(nu_1) along nu_2
  double xi = 0.0;   // added to xi along nu_1
  double g = 0.0;    // added to g(nu_1, nu_3) and g(nu_3, nu_1)
  double g11 = 0.0;  // added to g(nu_1, nu_1)
};

inline lpv::StructurePtr example3(Example3Perturbation d = {}) {
  const std::vector<std::string> coords{"x", "y", "z"};
  std::vector<std::vector<lpv::Expr>> frame{
      {parse("0"), parse("e^z"), parse("0")}, {parse("e^z"), parse("e^z"), parse("0")}, {parse("0"), parse("0"), parse("1")}};
  Eigen::MatrixXd g = Eigen::Vector3d(1.0 + d.g11, 1.0, -1.0).asDiagonal();
  g(0, 2) = g(2, 0) = d.g;
  lpv::ManifoldSpec::Options opts;
  opts.claim = lpv::SignatureClaim::Lorentzian;
  auto spec = lpv::ManifoldSpec::create(coords, std::move(frame), g, opts);
  auto c = [](double v) { return lpv::Expr::constant(v); };
  std::vector<std::vector<lpv::Expr>> phi{{c(-1), c(0), c(0)}, {c(d.phi), c(-1), c(0)}, {c(0), c(0), c(0)}};
  return lpv::LPStructure::create(std::move(spec), std::move(phi), {c(d.xi), c(0), c(1)}, true);
}

inline const lpv::IdentityEntry& entry(const lpv::IdentityReport& r, const std::string& id) {
  const lpv::IdentityEntry* e = r.find(id);
  if (!e) throw std::runtime_error("no entry " + id + " in suite " + r.suite);
  return *e;
}

inline std::size_t gating_failures(const lpv::IdentityReport& r) {
  std::size_t n = 0;
  for (const auto& e : r.entries)
    if (!e.informational && e.status == lpv::Status::Fail) ++n;
  return n;
}

}  // namespace testing_support
