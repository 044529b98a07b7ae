#include "lpverify/connection.hpp"
#include "lpverify/curvature.hpp"
#include "lpverify/errors.hpp"
#include "lpverify/sampling.hpp"
#include "lpverify/structure.hpp"

namespace lpv {
namespace {

constexpr std::size_t kRandomVectors = 2;

}  // namespace

IdentityReport verify_lp_axioms(const StructurePtr& st, std::uint64_t seed, std::size_t count, double tolerance) {
  IdentityReport rep;
  rep.suite = "axioms";
  rep.seed = seed;
  const auto& spec = st->spec();
  const std::size_t n = spec.dimension();
  const Eigen::MatrixXd& g = spec.metric();
  const Connection lc = Connection::levi_civita(st);

  Residual eta_xi, phi_sq, compat, nabla_xi, nabla_phi, closed, phi_xi, eta_phi;
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, n, kRandomVectors);
    const PointStructure ps(*st, p);
    const ConnectionAt at = lc.at(p);
    const JetMatrix phi = st->phi_jet(p);
    const FieldJet xi = st->xi_jet(p);

    eta_xi.add(ps.eta_of(ps.xi) + 1.0);
    phi_xi.add(ps.phi_of(ps.xi));
    for (const auto& u : vs) {
      phi_sq.add(ps.phi_of(ps.phi_of(u)) - u - ps.eta_of(u) * ps.xi);
      eta_phi.add(ps.eta_of(ps.phi_of(u)));
      nabla_xi.add(at.nabla(u, xi) - ps.phi_of(u));
      if (st->eta_closed()) closed.add(ps.big_phi(u, ps.xi));
      for (const auto& v : vs) {
        compat.add(ps.inner(ps.phi_of(u), ps.phi_of(v)) - ps.inner(u, v) - ps.eta_of(u) * ps.eta_of(v));

        FieldJet phi_v(n);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j)
            if (v(j) != 0.0) phi_v[k] += v(j) * phi(k, j);
        const Eigen::VectorXd direct = at.nabla(u, phi_v) - ps.phi_of(at.nabla(u, v));
        const Eigen::VectorXd expected =
            ps.inner(u, v) * ps.xi + ps.eta_of(v) * u + 2.0 * ps.eta_of(u) * ps.eta_of(v) * ps.xi;
        nabla_phi.add(direct - expected);

        if (st->eta_closed()) {
          Jet eta_v;
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
              if (v(j) != 0.0 && g(j, l) != 0.0) eta_v += v(j) * g(j, l) * xi[l];
          const double lhs = at.frame().derivative(u, eta_v) - ps.eta_of(at.nabla(u, v));
          closed.add(lhs - ps.big_phi(u, v));
        }
      }
    }
  }
  rep.entries.push_back(make_entry("eta_xi", eta_xi, tolerance, count));
  rep.entries.push_back(make_entry("phi_square", phi_sq, tolerance, count));
  rep.entries.push_back(make_entry("metric_compat_phi", compat, tolerance, count));
  rep.entries.push_back(make_entry("nabla_xi", nabla_xi, tolerance, count));
  rep.entries.push_back(make_entry("nabla_phi", nabla_phi, tolerance, count));
  if (st->eta_closed())
    rep.entries.push_back(make_entry("eta_closed_2_10", closed, tolerance, count));
  else
    rep.entries.push_back(not_applicable_entry("eta_closed_2_10", tolerance, "eta not declared closed"));
  rep.entries.push_back(make_entry("phi_xi_zero", phi_xi, tolerance, count));
  rep.entries.push_back(make_entry("eta_phi_zero", eta_phi, tolerance, count));
  return rep;
}

IdentityReport verify_lc_curvature_identities(const StructurePtr& st, const Connection& lc, std::uint64_t seed,
                                              std::size_t count, double tolerance) {
  if (lc.kind() != ConnectionKind::LeviCivita) throw ValidationError("expected the Levi-Civita connection");
  IdentityReport rep;
  rep.suite = "lc_curvature";
  rep.seed = seed;
  rep.add_flag("ricci_signature_weights");
  const auto& spec = st->spec();
  const std::size_t n = spec.dimension();
  const double n1 = static_cast<double>(n) - 1.0;

  Residual r_xi_u_v, r_u_v_xi, s_u_xi, s_phi_phi;
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, n, kRandomVectors);
    const PointStructure ps(*st, p);
    const ConnectionAt at = lc.at(p);
    const RicciData ric = ricci_from(CurvatureTensor(at), spec, ps);
    for (const auto& u : vs) {
      s_u_xi.add(ric(u, ps.xi) - n1 * ps.eta_of(u));
      for (const auto& v : vs) {
        r_xi_u_v.add(at.riemann(ps.xi, u, v) - (ps.inner(u, v) * ps.xi - ps.eta_of(v) * u));
        r_u_v_xi.add(at.riemann(u, v, ps.xi) - (ps.eta_of(v) * u - ps.eta_of(u) * v));
        s_phi_phi.add(ric(ps.phi_of(u), ps.phi_of(v)) - ric(u, v) - n1 * ps.eta_of(u) * ps.eta_of(v));
      }
    }
  }
  rep.entries.push_back(make_entry("r_xi_u_v", r_xi_u_v, tolerance, count));
  rep.entries.push_back(make_entry("r_u_v_xi", r_u_v_xi, tolerance, count));
  rep.entries.push_back(make_entry("s_u_xi", s_u_xi, tolerance, count));
  rep.entries.push_back(make_entry("s_phi_phi", s_phi_phi, tolerance, count));
  return rep;
}

}  // namespace lpv
