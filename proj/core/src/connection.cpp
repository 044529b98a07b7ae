#include "lpverify/connection.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lpverify/errors.hpp"
#include "lpverify/sampling.hpp"

namespace lpv {
namespace {

constexpr std::size_t kRandomVectors = 2;

}  // namespace

Connection Connection::levi_civita(StructurePtr st) {
  if (!st) throw ValidationError("connection needs a structure");
  return Connection(std::move(st), ConnectionKind::LeviCivita, {});
}

Connection Connection::generalized(StructurePtr st, ConnectionParams params) {
  if (!st) throw ValidationError("connection needs a structure");
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta))
    throw ValidationError("alpha and beta must be finite");
  return Connection(std::move(st), ConnectionKind::GeneralizedSymmetric, params);
}

Connection Connection::non_metric_control(StructurePtr st, double alpha) {
  if (!st) throw ValidationError("connection needs a structure");
  return Connection(std::move(st), ConnectionKind::NonMetricControl, {alpha, 0.0});
}

ConnectionAt Connection::at(const Point& p) const { return at(LocalFrame(st_->spec(), p)); }

ConnectionAt Connection::at(const LocalFrame& frame) const {
  ConnectionAt out(frame);
  const std::size_t n = frame.dimension();
  const Eigen::MatrixXd& g = st_->spec().metric();
  const Eigen::MatrixXd& gi = st_->spec().metric_inverse();

  // Koszul with a constant frame metric:
  // 2 g(nabla_i nu_j, nu_k) = c_ijk - c_ikj - c_jki, c_ijk = g([nu_i, nu_j], nu_k).
  std::vector<Jet> low(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Jet acc;
        for (std::size_t l = 0; l < n; ++l)
          if (g(l, k) != 0.0) acc += g(l, k) * frame.structure(i, j, l);
        low[(i * n + j) * n + k] = acc;
      }
  auto c = [&](std::size_t i, std::size_t j, std::size_t k) -> const Jet& { return low[(i * n + j) * n + k]; };

  out.gamma_.assign(n * n * n, Jet());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Jet lowered = 0.5 * (c(i, j, k) - c(i, k, j) - c(j, k, i));
        for (std::size_t m = 0; m < n; ++m)
          if (gi(m, k) != 0.0) out.gamma_[(i * n + j) * n + m] += gi(m, k) * lowered;
      }

  if (kind_ == ConnectionKind::LeviCivita) return out;

  const Point& p = frame.point();
  const FieldJet xi = st_->xi_jet(p);
  const JetMatrix phi = st_->phi_jet(p);
  FieldJet eta(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      if (g(j, l) != 0.0) eta[j] += g(j, l) * xi[l];
  const double a = params_.alpha;
  const double b = params_.beta;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Phi(nu_i, nu_j) = sum_m phi^m_i g_mj
      Jet big_phi;
      for (std::size_t m = 0; m < n; ++m)
        if (g(m, j) != 0.0) big_phi += g(m, j) * phi(m, i);
      for (std::size_t k = 0; k < n; ++k) {
        Jet& gam = out.gamma_[(i * n + j) * n + k];
        if (kind_ == ConnectionKind::NonMetricControl) {
          if (i == k) gam += a * eta[j];
          continue;
        }
        Jet h;
        if (i == k) h += a * eta[j];
        h -= a * g(i, j) * xi[k];
        h += b * (eta[j] * phi(k, i));
        h -= b * (big_phi * xi[k]);
        gam += h;
      }
    }
  return out;
}

Eigen::VectorXd ConnectionAt::nabla(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const std::size_t n = dimension();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = u(i) * v(j);
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) r(k) += w * gamma(i, j, k).value;
    }
  return r;
}

FieldJet ConnectionAt::nabla_jet(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const std::size_t n = dimension();
  FieldJet r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = u(i) * v(j);
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) r[k] += w * gamma(i, j, k);
    }
  return r;
}

Eigen::VectorXd ConnectionAt::nabla(const Eigen::VectorXd& u, const FieldJet& y) const {
  const std::size_t n = dimension();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      double acc = frame_.frame_derivative(i, y[k]);
      for (std::size_t j = 0; j < n; ++j) acc += y[j].value * gamma(i, j, k).value;
      r(k) += u(i) * acc;
    }
  }
  return r;
}

Eigen::VectorXd ConnectionAt::torsion(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return nabla(u, v) - nabla(v, u) - frame_.bracket(u, v);
}

Eigen::VectorXd ConnectionAt::riemann(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& w) const {
  return nabla(u, nabla_jet(v, w)) - nabla(v, nabla_jet(u, w)) - nabla(frame_.bracket(u, v), w);
}

Eigen::VectorXd TorsionFormulas::model(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                                       const Eigen::VectorXd& v) {
  const double eu = s.eta_of(u);
  const double ev = s.eta_of(v);
  return c.alpha * (ev * u - eu * v) + c.beta * (ev * s.phi_of(u) - eu * s.phi_of(v));
}

Eigen::VectorXd TorsionFormulas::tprime(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                                        const Eigen::VectorXd& v) {
  const double eu = s.eta_of(u);
  return c.alpha * (eu * v - s.inner(u, v) * s.xi) + c.beta * (eu * s.phi_of(v) - s.big_phi(u, v) * s.xi);
}

Eigen::VectorXd TorsionFormulas::h(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& v) {
  const double ev = s.eta_of(v);
  return c.alpha * (ev * u - s.inner(u, v) * s.xi) + c.beta * (ev * s.phi_of(u) - s.big_phi(u, v) * s.xi);
}

Connection levi_civita(const StructurePtr& st) { return Connection::levi_civita(st); }

Connection generalized_connection(const StructurePtr& st, ConnectionParams params) {
  return Connection::generalized(st, params);
}

VectorValue covariant_derivative(const Connection& conn, const FrameField& u, const FrameField& v, const Point& p) {
  const std::size_t n = conn.structure().dimension();
  if (u.dimension() != n || v.dimension() != n) throw ValidationError("field dimension does not match the manifold");
  const ConnectionAt at = conn.at(p);
  return {at.nabla(u.value(p), v.jet(p)), Basis::Frame};
}

TorsionData torsion(const Connection& conn, const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Point& p) {
  const ConnectionAt at = conn.at(p);
  const PointStructure s(conn.structure(), p);
  const ConnectionParams c = conn.kind() == ConnectionKind::GeneralizedSymmetric ? conn.params() : ConnectionParams{};
  TorsionData d;
  d.torsion_value = {at.torsion(u, v), Basis::Frame};
  d.model_value = {TorsionFormulas::model(s, c, u, v), Basis::Frame};
  d.tprime_value = {TorsionFormulas::tprime(s, c, u, v), Basis::Frame};
  d.h_value = {0.5 * (d.torsion_value.components + d.tprime_value.components + TorsionFormulas::tprime(s, c, v, u)),
               Basis::Frame};
  return d;
}

namespace {

double metric_residual_at(const ConnectionAt& at, const Eigen::MatrixXd& g, const std::vector<Eigen::VectorXd>& vs) {
  double worst = 0.0;
  for (const auto& x : vs)
    for (const auto& y : vs) {
      const Eigen::VectorXd nxy = at.nabla(x, y);
      for (const auto& z : vs) {
        // X g(Y, Z) vanishes: constant coefficients, constant frame metric.
        const double r = -nxy.dot(g * z) - y.dot(g * at.nabla(x, z));
        worst = std::max(worst, std::abs(r));
      }
    }
  return worst;
}

}  // namespace

double metric_compatibility_residual(const Connection& conn, std::uint64_t seed, std::size_t count) {
  const auto& spec = conn.structure().spec();
  Sampler s(seed);
  Residual r;
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, spec.dimension(), kRandomVectors);
    r.add(metric_residual_at(conn.at(p), spec.metric(), vs));
  }
  return r.value();
}

IdentityReport connection_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                    std::size_t count, double tolerance) {
  IdentityReport rep;
  rep.suite = "connection";
  rep.seed = seed;
  rep.alpha = params.alpha;
  rep.beta = params.beta;
  const auto& spec = st->spec();
  const Connection lc = Connection::levi_civita(st);
  const Connection bar = Connection::generalized(st, params);
  const bool semi = params.alpha == 1.0 && params.beta == 0.0;
  const bool quarter = params.alpha == 0.0 && params.beta == 1.0;

  Residual lc_torsion, lc_metric, bar_metric, diff_h, special;
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, spec.dimension(), kRandomVectors);
    const LocalFrame lf(spec, p);
    const ConnectionAt a = lc.at(lf);
    const ConnectionAt b = bar.at(lf);
    const PointStructure ps(*st, p);
    lc_metric.add(metric_residual_at(a, spec.metric(), vs));
    bar_metric.add(metric_residual_at(b, spec.metric(), vs));
    for (const auto& u : vs)
      for (const auto& v : vs) {
        lc_torsion.add(a.torsion(u, v));
        const Eigen::VectorXd d = b.nabla(u, v) - a.nabla(u, v);
        diff_h.add(d - TorsionFormulas::h(ps, params, u, v));
        if (semi) special.add(d - (ps.eta_of(v) * u - ps.inner(u, v) * ps.xi));
        if (quarter) special.add(d - (ps.eta_of(v) * ps.phi_of(u) - ps.big_phi(u, v) * ps.xi));
      }
  }
  rep.entries.push_back(make_entry("lc_torsion_free", lc_torsion, tolerance, count));
  rep.entries.push_back(make_entry("lc_metric", lc_metric, tolerance, count));
  rep.entries.push_back(make_entry("metric_compat", bar_metric, tolerance, count));
  rep.entries.push_back(make_entry("difference_h", diff_h, tolerance, count));
  const double strict = std::min(tolerance, 1e-12);
  if (semi)
    rep.entries.push_back(make_entry("semi_symmetric_form", special, strict, count));
  else
    rep.entries.push_back(not_applicable_entry("semi_symmetric_form", strict, "only at (alpha, beta) = (1, 0)"));
  if (quarter)
    rep.entries.push_back(make_entry("quarter_symmetric_form", special, strict, count));
  else
    rep.entries.push_back(not_applicable_entry("quarter_symmetric_form", strict, "only at (alpha, beta) = (0, 1)"));
  return rep;
}

IdentityReport torsion_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                 std::size_t count, double tolerance) {
  IdentityReport rep;
  rep.suite = "torsion";
  rep.seed = seed;
  rep.alpha = params.alpha;
  rep.beta = params.beta;
  rep.add_flag("torsion_model_phi_U_reading");
  const auto& spec = st->spec();
  const Connection lc = Connection::levi_civita(st);
  const Connection bar = Connection::generalized(st, params);

  Residual model, duality, half_sum;
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, spec.dimension(), kRandomVectors);
    const LocalFrame lf(spec, p);
    const ConnectionAt a = lc.at(lf);
    const ConnectionAt b = bar.at(lf);
    const PointStructure ps(*st, p);
    for (const auto& u : vs)
      for (const auto& v : vs) {
        const Eigen::VectorXd t = b.torsion(u, v);
        model.add(t - TorsionFormulas::model(ps, params, u, v));
        const Eigen::VectorXd h =
            0.5 * (t + TorsionFormulas::tprime(ps, params, u, v) + TorsionFormulas::tprime(ps, params, v, u));
        half_sum.add(h - (b.nabla(u, v) - a.nabla(u, v)));
        for (const auto& w : vs)
          duality.add(ps.inner(TorsionFormulas::tprime(ps, params, u, v), w) - ps.inner(b.torsion(w, u), v));
      }
  }
  rep.entries.push_back(make_entry("torsion_model", model, tolerance, count));
  rep.entries.push_back(make_entry("tprime_duality", duality, tolerance, count));
  rep.entries.push_back(make_entry("h_half_sum", half_sum, tolerance, count));
  return rep;
}

IdentityReport proposition_residuals(const StructurePtr& st, ConnectionParams params, std::uint64_t seed,
                                     std::size_t count, double tolerance) {
  IdentityReport rep;
  rep.suite = "proposition";
  rep.seed = seed;
  rep.alpha = params.alpha;
  rep.beta = params.beta;
  const auto& spec = st->spec();
  const std::size_t n = spec.dimension();
  const Eigen::MatrixXd& g = spec.metric();
  const Connection bar = Connection::generalized(st, params);
  const double a = params.alpha;
  const double b = params.beta;

  Residual r_phi, r_xi, r_eta;
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Point p = s.point(spec);
    const auto vs = test_vectors(s, n, kRandomVectors);
    const ConnectionAt at = bar.at(p);
    const PointStructure ps(*st, p);
    const JetMatrix phi = st->phi_jet(p);
    const FieldJet xi = st->xi_jet(p);
    for (const auto& u : vs) {
      r_xi.add(at.nabla(u, xi) - ((1 - b) * ps.phi_of(u) - a * u - a * ps.eta_of(u) * ps.xi));
      for (const auto& v : vs) {
        FieldJet phi_v(n);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j)
            if (v(j) != 0.0) phi_v[k] += v(j) * phi(k, j);
        const Eigen::VectorXd direct = at.nabla(u, phi_v) - ps.phi_of(at.nabla(u, v));
        const Eigen::VectorXd closed =
            ((1 - b) * ps.inner(u, v) + (2 - 2 * b) * ps.eta_of(u) * ps.eta_of(v) - a * ps.big_phi(u, v)) * ps.xi +
            (1 - b) * ps.eta_of(v) * u - a * ps.eta_of(v) * ps.phi_of(u);
        r_phi.add(direct - closed);

        // (nabla_U eta)V = U(eta(V)) - eta(nabla_U V)
        Jet eta_v;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l)
            if (v(j) != 0.0 && g(j, l) != 0.0) eta_v += v(j) * g(j, l) * xi[l];
        const double lhs = at.frame().derivative(u, eta_v) - ps.eta_of(at.nabla(u, v));
        const double rhs = (1 - b) * ps.big_phi(u, v) - a * ps.inner(ps.phi_of(u), ps.phi_of(v));
        r_eta.add(lhs - rhs);
      }
    }
  }
  rep.entries.push_back(make_entry("nabla_bar_phi", r_phi, tolerance, count));
  rep.entries.push_back(make_entry("nabla_bar_xi", r_xi, tolerance, count));
  rep.entries.push_back(make_entry("nabla_bar_eta", r_eta, tolerance, count));
  return rep;
}

}  // namespace lpv
