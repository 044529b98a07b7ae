#include "lpverify/structure.hpp"

#include <string>
#include <utility>

#include "lpverify/errors.hpp"

namespace lpv {

StructurePtr LPStructure::create(ManifoldPtr spec, std::vector<std::vector<Expr>> phi, std::vector<Expr> xi,
                                 bool eta_closed) {
  if (!spec) throw ValidationError("structure needs a manifold");
  const std::size_t n = spec->dimension();
  if (phi.size() != n) throw ValidationError("phi must have " + std::to_string(n) + " rows");
  for (const auto& row : phi)
    if (row.size() != n) throw ValidationError("phi must have " + std::to_string(n) + " columns");
  if (xi.size() != n) throw ValidationError("xi must have " + std::to_string(n) + " frame coefficients");

  std::shared_ptr<LPStructure> st(new LPStructure());
  st->spec_ = std::move(spec);
  st->eta_closed_ = eta_closed;
  st->phi_.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      if (phi[k][j].arity() > n) throw ValidationError("phi entry refers to an unknown coordinate");
      st->phi_.emplace_back(std::move(phi[k][j]), n);
      st->constant_ = st->constant_ && st->phi_.back().is_constant();
    }
  for (auto& e : xi) {
    if (e.arity() > n) throw ValidationError("xi entry refers to an unknown coordinate");
    st->xi_.emplace_back(std::move(e), n);
    st->constant_ = st->constant_ && st->xi_.back().is_constant();
  }
  return st;
}

Eigen::MatrixXd LPStructure::phi(const Point& p) const {
  const std::size_t n = dimension();
  Eigen::MatrixXd m(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m(k, j) = phi_[k * n + j].eval(p.span());
  return m;
}

JetMatrix LPStructure::phi_jet(const Point& p) const {
  const std::size_t n = dimension();
  JetMatrix m(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) m(k, j) = phi_[k * n + j].jet(p.span());
  return m;
}

Eigen::VectorXd LPStructure::xi(const Point& p) const {
  Eigen::VectorXd v(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) v(k) = xi_[k].eval(p.span());
  return v;
}

FieldJet LPStructure::xi_jet(const Point& p) const {
  FieldJet v(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) v[k] = xi_[k].jet(p.span());
  return v;
}

PointStructure::PointStructure(const LPStructure& st, const Point& p)
    : g(st.spec().metric()), phi(st.phi(p)), xi(st.xi(p)), eta(g * xi) {}

double PointStructure::trace_phi(const Eigen::MatrixXd& g_inverse) const {
  // Phi(nu_i, nu_j) = (phi^T g)_{ij}
  const Eigen::MatrixXd big = phi.transpose() * g;
  return (g_inverse.transpose().cwiseProduct(big)).sum();
}

StructurePtr build_example3() {
  const std::vector<std::string> coords{"x", "y", "z"};
  const Expr z = Expr::variable(2, "z");
  const Expr ez = exp(z);
  const Expr zero = Expr::constant(0.0);
  const Expr one = Expr::constant(1.0);
  std::vector<std::vector<Expr>> frame{{zero, ez, zero}, {ez, ez, zero}, {zero, zero, one}};
  Eigen::MatrixXd g = Eigen::Vector3d(1.0, 1.0, -1.0).asDiagonal();
  ManifoldSpec::Options opts;
  opts.claim = SignatureClaim::Lorentzian;
  auto spec = ManifoldSpec::create(coords, std::move(frame), g, opts);
  const Expr m1 = Expr::constant(-1.0);
  std::vector<std::vector<Expr>> phi{{m1, zero, zero}, {zero, m1, zero}, {zero, zero, zero}};
  return LPStructure::create(std::move(spec), std::move(phi), {zero, zero, one}, true);
}

double phi_form(const LPStructure& st, const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Point& p) {
  st.spec().check_point(p);
  return PointStructure(st, p).big_phi(u, v);
}

double trace_phi(const LPStructure& st, const Point& p) {
  st.spec().check_point(p);
  return PointStructure(st, p).trace_phi(st.spec().metric_inverse());
}

}  // namespace lpv
