#include "lpverify/curvature.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "lpverify/errors.hpp"
#include "lpverify/sampling.hpp"

namespace lpv {
namespace {

constexpr std::size_t kRandomVectors = 2;

// Everything a suite needs at one sample point.
struct PointData {
  Point p;
  std::vector<Eigen::VectorXd> vs;
  PointStructure s;
  ConnectionAt lc;
  ConnectionAt bar;
  CurvatureTensor r_lc;
  CurvatureTensor r_bar;

  PointData(Point q, std::vector<Eigen::VectorXd> vectors, const StructurePtr& st, const LocalFrame& lf,
            const Connection& lcc, const Connection& barc)
      : p(std::move(q)),
        vs(std::move(vectors)),
        s(*st, p),
        lc(lcc.at(lf)),
        bar(barc.at(lf)),
        r_lc(lc),
        r_bar(bar) {}
};

template <typename Fn>
void for_each_point(const StructurePtr& st, ConnectionParams c, std::uint64_t seed, std::size_t count, Fn&& fn) {
  const auto& spec = st->spec();
  const Connection lc = Connection::levi_civita(st);
  const Connection bar = Connection::generalized(st, c);
  Sampler s(seed);
  for (std::size_t i = 0; i < count; ++i) {
    Point p = s.point(spec);
    auto vs = test_vectors(s, spec.dimension(), kRandomVectors);
    const LocalFrame lf(spec, p);
    const PointData d(std::move(p), std::move(vs), st, lf, lc, bar);
    fn(d);
  }
}

IdentityReport make_report(std::string suite, std::uint64_t seed, ConnectionParams c) {
  IdentityReport rep;
  rep.suite = std::move(suite);
  rep.seed = seed;
  rep.alpha = c.alpha;
  rep.beta = c.beta;
  return rep;
}

double k1(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
          ClosedFormVariant variant) {
  const double a = c.alpha, b = c.beta;
  double r = (a * b - a) * s.big_phi(v, w) + a * a * s.inner(v, w) + (a * a + b - b * b) * s.eta_of(v) * s.eta_of(w);
  if (variant == ClosedFormVariant::WithEtaTerms) r += b * b * s.eta_of(v) * s.eta_of(w);
  return r;
}

double k2(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
          ClosedFormVariant variant) {
  const double a = c.alpha, b = c.beta;
  double r = (b * b - 2 * b) * s.big_phi(v, w) - a * (1 - b) * s.inner(v, w);
  if (variant == ClosedFormVariant::WithEtaTerms) r += a * b * s.eta_of(v) * s.eta_of(w);
  return r;
}

double k3(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
          const Eigen::VectorXd& w) {
  const double a = c.alpha, b = c.beta;
  return ((a * a + b) * s.inner(v, w) + a * b * s.big_phi(v, w)) * s.eta_of(u);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

CurvatureTensor::CurvatureTensor(const ConnectionAt& at) : n_(at.dimension()) {
  r_.reserve(n_ * n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        r_.push_back(i == j ? Eigen::VectorXd::Zero(n_)
                            : at.riemann(Eigen::VectorXd::Unit(n_, i), Eigen::VectorXd::Unit(n_, j),
                                         Eigen::VectorXd::Unit(n_, k)));
}

Eigen::VectorXd CurvatureTensor::apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                       const Eigen::VectorXd& w) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (u(i) == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      const double uv = u(i) * v(j);
      if (uv == 0.0 || i == j) continue;
      for (std::size_t k = 0; k < n_; ++k)
        if (w(k) != 0.0) out += uv * w(k) * r_[(i * n_ + j) * n_ + k];
    }
  }
  return out;
}

CoefficientForms coefficient_forms(const PointStructure& s, ConnectionParams c, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& v, const Eigen::VectorXd& w, ClosedFormVariant variant) {
  return {k1(s, c, v, w, variant), k2(s, c, v, w, variant), k3(s, c, u, v, w)};
}

VectorValue riemann(const Connection& conn, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                    const Eigen::VectorXd& w, const Point& p) {
  return {conn.at(p).riemann(u, v, w), Basis::Frame};
}

Eigen::VectorXd closed_form_at(const CurvatureTensor& lc, const PointStructure& s, ConnectionParams c,
                               const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                               ClosedFormVariant variant) {
  return lc.apply(u, v, w) + k1(s, c, v, w, variant) * u - k1(s, c, u, w, variant) * v +
         k2(s, c, v, w, variant) * s.phi_of(u) - k2(s, c, u, w, variant) * s.phi_of(v) +
         (k3(s, c, u, v, w) - k3(s, c, v, u, w)) * s.xi;
}

VectorValue curvature_closed_form(const StructurePtr& st, ConnectionParams c, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& v, const Eigen::VectorXd& w, const Point& p,
                                  ClosedFormVariant variant) {
  const CurvatureTensor lc(Connection::levi_civita(st).at(p));
  return {closed_form_at(lc, PointStructure(*st, p), c, u, v, w, variant), Basis::Frame};
}

RicciData ricci_from(const CurvatureTensor& r, const ManifoldSpec& spec, const PointStructure& s) {
  if (!spec.orthonormal()) throw ValidationError("Ricci contraction needs an orthonormal frame");
  const std::size_t n = spec.dimension();
  const auto& eps = spec.signature();
  RicciData d;
  d.s_bar = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
        acc += eps[i] * s.inner(r.basis(i, a, b), e);
      }
      d.s_bar(a, b) = acc;
    }
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
    d.scalar += eps[i] * d.s_bar(i, i);
    d.trace_phi += eps[i] * s.big_phi(e, e);
  }
  return d;
}

RicciData ricci(const Connection& conn, const Point& p) {
  return ricci_from(CurvatureTensor(conn.at(p)), conn.structure().spec(), PointStructure(conn.structure(), p));
}

double ricci_closed_form_at(const RicciData& lc, const PointStructure& s, ConnectionParams c, std::size_t n,
                            const Eigen::VectorXd& u, const Eigen::VectorXd& v, ClosedFormVariant variant) {
  const double a = c.alpha, b = c.beta, tr = lc.trace_phi;
  const double nn = static_cast<double>(n);
  const double phi_block = -a * b + (nn - 2) * (a * b - a) + (b * b - 2 * b) * tr;
  const double g_block = -2 * a * a + b - b * b + nn * a * a + (a * b - a) * tr;
  double eta_block = -2 * a * a + nn * (a * a + b - b * b);
  if (variant == ClosedFormVariant::WithEtaTerms) eta_block += (nn - 1) * b * b + a * b * tr;
  return lc(u, v) + phi_block * s.big_phi(u, v) + g_block * s.inner(u, v) + eta_block * s.eta_of(u) * s.eta_of(v);
}

double ricci_closed_form(const StructurePtr& st, ConnectionParams c, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& v, const Point& p, ClosedFormVariant variant) {
  const PointStructure s(*st, p);
  const RicciData lc = ricci_from(CurvatureTensor(Connection::levi_civita(st).at(p)), st->spec(), s);
  return ricci_closed_form_at(lc, s, c, st->dimension(), u, v, variant);
}

double xi_ricci_coefficient(double alpha, double beta, std::size_t n, double trace_phi) {
  return (static_cast<double>(n) - 1) * (1 - beta + beta * beta) + alpha * (beta - 1) * trace_phi;
}

double xi_ricci_coefficient_corrected(double alpha, double beta, std::size_t n, double trace_phi) {
  return (static_cast<double>(n) - 1) * (1 - beta) - alpha * trace_phi;
}

IdentityReport curvature_residuals(const StructurePtr& st, ConnectionParams c, std::uint64_t seed,
                                   std::size_t count, double tolerance) {
  IdentityReport rep = make_report("curvature", seed, c);
  rep.add_flag("closed_form_eta_terms_missing");
  Residual printed, corrected, antisym;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    for (const auto& u : d.vs)
      for (const auto& v : d.vs)
        for (const auto& w : d.vs) {
          const Eigen::VectorXd direct = d.bar.riemann(u, v, w);
          printed.add(direct - closed_form_at(d.r_lc, d.s, c, u, v, w));
          corrected.add(direct - closed_form_at(d.r_lc, d.s, c, u, v, w, ClosedFormVariant::WithEtaTerms));
          antisym.add(direct + d.bar.riemann(v, u, w));
        }
  });
  rep.entries.push_back(make_entry("closed_form", printed, tolerance, count));
  auto diag = make_entry("closed_form_eta_terms", corrected, tolerance, count, true);
  diag.note = "K1 + beta^2 eta(V)eta(W), K2 + alpha beta eta(V)eta(W)";
  rep.entries.push_back(std::move(diag));
  rep.entries.push_back(make_entry("antisymmetry", antisym, tolerance, count));
  return rep;
}

IdentityReport lemma3_residuals(const StructurePtr& st, ConnectionParams c, std::uint64_t seed, std::size_t count,
                                double tolerance) {
  IdentityReport rep = make_report("lemma3", seed, c);
  rep.add_flag("lemma42_minus_a_read_as_alpha");
  const double a = c.alpha, b = c.beta;
  const double q = 1 - b + b * b;
  Residual r1, r2, r3;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    const auto& s = d.s;
    const Eigen::VectorXd& xi = s.xi;
    for (const auto& u : d.vs)
      for (const auto& v : d.vs) {
        const Eigen::VectorXd lhs1 = d.bar.riemann(u, v, xi);
        const Eigen::VectorXd rhs1 = q * (s.eta_of(v) * u - s.eta_of(u) * v) +
                                     a * (1 - b) * (s.eta_of(u) * s.phi_of(v) - s.eta_of(v) * s.phi_of(u));
        r1.add(lhs1 - rhs1);
        // Here u plays the role of W.
        const Eigen::VectorXd& w = u;
        const Eigen::VectorXd lhs2 = d.bar.riemann(xi, v, w);
        const Eigen::VectorXd rhs2 =
            (-a * s.big_phi(v, w) + (1 - b) * s.inner(v, w) - b * b * s.eta_of(v) * s.eta_of(w)) * xi -
            q * s.eta_of(w) * v + a * (1 - b) * s.eta_of(w) * s.phi_of(v);
        r2.add(lhs2 - rhs2);
      }
    for (const auto& v : d.vs) {
      const Eigen::VectorXd lhs3 = d.bar.riemann(xi, v, xi);
      const Eigen::VectorXd rhs3 = q * (s.eta_of(v) * xi + v) + a * (b - 1) * s.phi_of(v);
      r3.add(lhs3 - rhs3);
    }
  });
  rep.entries.push_back(make_entry("r_bar_uv_xi", r1, tolerance, count));
  rep.entries.push_back(make_entry("r_bar_xi_v_w", r2, tolerance, count));
  rep.entries.push_back(make_entry("r_bar_xi_v_xi", r3, tolerance, count));
  return rep;
}

IdentityReport ricci_residuals(const StructurePtr& st, ConnectionParams c, std::uint64_t seed, std::size_t count,
                               double tolerance) {
  IdentityReport rep = make_report("ricci", seed, c);
  rep.add_flag("ricci_signature_weights");
  const std::size_t n = st->dimension();
  Residual sym, printed, corrected;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    const RicciData bar = ricci_from(d.r_bar, st->spec(), d.s);
    const RicciData lc = ricci_from(d.r_lc, st->spec(), d.s);
    sym.add((bar.s_bar - bar.s_bar.transpose()).cwiseAbs().maxCoeff());
    for (const auto& u : d.vs)
      for (const auto& v : d.vs) {
        printed.add(bar(u, v) - ricci_closed_form_at(lc, d.s, c, n, u, v));
        corrected.add(bar(u, v) - ricci_closed_form_at(lc, d.s, c, n, u, v, ClosedFormVariant::WithEtaTerms));
      }
  });
  rep.entries.push_back(make_entry("symmetry", sym, tolerance, count));
  rep.entries.push_back(make_entry("closed_form", printed, tolerance, count));
  auto diag = make_entry("closed_form_eta_terms", corrected, tolerance, count, true);
  diag.note = "eta block + (n-1) beta^2 + alpha beta trace Phi";
  rep.entries.push_back(std::move(diag));
  return rep;
}

IdentityReport lemma5_residuals(const StructurePtr& st, ConnectionParams c, std::uint64_t seed, std::size_t count,
                                double tolerance) {
  IdentityReport rep = make_report("lemma5", seed, c);
  const std::size_t n = st->dimension();
  Residual v_xi, phi_phi, v_xi_c, phi_phi_c;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    const auto& s = d.s;
    const RicciData bar = ricci_from(d.r_bar, st->spec(), s);
    const double k = xi_ricci_coefficient(c.alpha, c.beta, n, bar.trace_phi);
    const double kc = xi_ricci_coefficient_corrected(c.alpha, c.beta, n, bar.trace_phi);
    for (const auto& v : d.vs) {
      v_xi.add(bar(v, s.xi) - k * s.eta_of(v));
      v_xi_c.add(bar(v, s.xi) - kc * s.eta_of(v));
      for (const auto& w : d.vs) {
        const double diff = bar(s.phi_of(v), s.phi_of(w)) - bar(v, w);
        const double ee = s.eta_of(v) * s.eta_of(w);
        phi_phi.add(diff - k * ee);
        phi_phi_c.add(diff - kc * ee);
      }
    }
  });
  rep.entries.push_back(make_entry("s_bar_v_xi", v_xi, tolerance, count));
  rep.entries.push_back(make_entry("s_bar_phi_phi", phi_phi, tolerance, count));
  auto a = make_entry("s_bar_v_xi_corrected", v_xi_c, tolerance, count, true);
  a.note = "coefficient (n-1)(1-beta) - alpha trace Phi";
  rep.entries.push_back(std::move(a));
  auto b = make_entry("s_bar_phi_phi_corrected", phi_phi_c, tolerance, count, true);
  b.note = "coefficient (n-1)(1-beta) - alpha trace Phi";
  rep.entries.push_back(std::move(b));
  return rep;
}

namespace {

double semisymmetry_at(const CurvatureTensor& r, const RicciData& ric, const std::vector<Eigen::VectorXd>& vs) {
  double worst = 0.0;
  for (const auto& x : vs)
    for (const auto& y : vs)
      for (const auto& z : vs) {
        const Eigen::VectorXd rz = r.apply(x, y, z);
        for (const auto& u : vs) {
          const double t = ric(rz, u) + ric(z, r.apply(x, y, u));
          if (std::isnan(t)) return t;
          worst = std::max(worst, std::abs(t));
        }
      }
  return worst;
}

}  // namespace

double ricci_semisymmetry_residual(const StructurePtr& st, ConnectionParams c, std::uint64_t seed,
                                   std::size_t count) {
  Residual r;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    r.add(semisymmetry_at(d.r_bar, ricci_from(d.r_bar, st->spec(), d.s), d.vs));
  });
  return r.value();
}

IdentityReport semisymmetry_residuals(const StructurePtr& st, ConnectionParams c, std::uint64_t seed,
                                      std::size_t count, double tolerance) {
  IdentityReport rep = make_report("semisymmetry", seed, c);
  Residual measured, diagonal;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    const RicciData ric = ricci_from(d.r_bar, st->spec(), d.s);
    measured.add(semisymmetry_at(d.r_bar, ric, d.vs));
    for (const auto& x : d.vs)
      for (const auto& z : d.vs)
        for (const auto& u : d.vs) diagonal.add(ric(d.bar.riemann(x, x, z), u) + ric(z, d.bar.riemann(x, x, u)));
  });
  auto e = make_entry("ricci_semisymmetry", measured, tolerance, count, true);
  e.note = e.status == Status::Pass ? "Ricci semi-symmetric on the samples" : "not Ricci semi-symmetric";
  rep.entries.push_back(std::move(e));
  rep.entries.push_back(make_entry("diagonal_vanishes", diagonal, tolerance, count));
  return rep;
}

std::string_view to_string(EinsteinClass c) noexcept {
  switch (c) {
    case EinsteinClass::Einstein: return "Einstein";
    case EinsteinClass::EtaEinstein: return "EtaEinstein";
    case EinsteinClass::GeneralizedEtaEinstein: return "GeneralizedEtaEinstein";
    case EinsteinClass::None: return "None";
  }
  return "?";
}

EtaEinsteinFit eta_einstein_fit(const LPStructure& st, const std::vector<RicciSample>& samples,
                                double zero_threshold) {
  const auto m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& smp = samples[static_cast<std::size_t>(r)];
    const PointStructure s(st, smp.p);
    design(r, 0) = s.inner(smp.u, smp.v);
    design(r, 1) = s.eta_of(smp.u) * s.eta_of(smp.v);
    design(r, 2) = s.big_phi(smp.u, smp.v);
    y(r) = smp.value;
  }
  auto full_rank = [](const Eigen::MatrixXd& a) {
    if (a.rows() < a.cols()) return false;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    return sv(0) > 0.0 && sv(sv.size() - 1) > 1e-9 * sv(0);
  };
  if (!full_rank(design.leftCols(2)))
    throw RankDeficientError("rank-deficient design: g and eta(x)eta are not independent on the samples");

  EtaEinsteinFit fit;
  Eigen::VectorXd coef;
  if (full_rank(design)) {
    coef = design.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
  } else {
    fit.phi_dependent = true;
    const Eigen::MatrixXd two = design.leftCols(2);
    coef = Eigen::VectorXd::Zero(3);
    coef.head(2) = two.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
  }
  fit.a = coef(0);
  fit.b = coef(1);
  fit.c = coef(2);
  fit.residual = m > 0 ? (design * coef - y).cwiseAbs().maxCoeff() : 0.0;
  const bool b0 = std::abs(fit.b) <= zero_threshold;
  const bool c0 = std::abs(fit.c) <= zero_threshold;
  if (!(fit.residual <= zero_threshold))
    fit.classification = EinsteinClass::None;
  else if (c0 && b0)
    fit.classification = EinsteinClass::Einstein;
  else if (c0)
    fit.classification = EinsteinClass::EtaEinstein;
  else
    fit.classification = EinsteinClass::GeneralizedEtaEinstein;
  return fit;
}

IdentityReport theorem44_verify(const StructurePtr& st, ConnectionParams c, std::uint64_t seed, std::size_t count,
                                double tolerance, double chain_tolerance) {
  IdentityReport rep = make_report("theorem44", seed, c);
  rep.add_flag("ricc_minus_a_read_as_alpha");
  rep.add_flag("soni_sign_reading");
  rep.add_flag("sonii_g_Y_U_reading");
  const std::size_t n = st->dimension();
  const double nn = static_cast<double>(n);
  const double a = c.alpha, b = c.beta;
  const double q = 1 - b + b * b;

  Residual hyp, ricc, etkkk, soni, soni_printed, sonii, soniii;
  std::vector<RicciSample> fit_samples;
  for_each_point(st, c, seed, count, [&](const PointData& d) {
    const auto& s = d.s;
    const RicciData ric = ricci_from(d.r_bar, st->spec(), s);
    hyp.add(semisymmetry_at(d.r_bar, ric, d.vs));
    const double k = xi_ricci_coefficient(a, b, n, ric.trace_phi);
    for (const auto& y : d.vs)
      for (const auto& u : d.vs) {
        const double syu = ric(y, u);
        const double sphi = ric(s.phi_of(y), u);
        const double big = s.big_phi(y, u);
        const double gyu = s.inner(y, u);
        const double ee = s.eta_of(y) * s.eta_of(u);
        ricc.add(q * syu + a * (b - 1) * sphi - k * (-a * big + (1 - b) * gyu - b * b * ee));
        etkkk.add(q * sphi + a * (b - 1) * syu - k * ((1 - b) * big - a * gyu - a * b * ee));
        const double lead = q * q - (a * b - a) * (a * b - a);
        const double eta_c = -std::pow(b, 4) + std::pow(b, 3) - b * b + a * a * b * b - b * a * a;
        const double g_c = (1 - b) * (1 - b + b * b - a * a);
        soni.add(lead * syu - k * (-a * b * big + g_c * gyu + eta_c * ee));
        soni_printed.add(lead * syu - k * (a * b * big - g_c * gyu + eta_c * ee));
        sonii.add(syu - ((nn - 1) * (1 - b) * gyu - (nn - 1) * b * b * ee));
        soniii.add((1 - a * a) * syu - (1 - a * a) * (nn - 1 - a * ric.trace_phi) * gyu);
        fit_samples.push_back({d.p, y, u, syu});
      }
  });

  const bool holds = hyp.value() <= tolerance;
  auto hyp_entry = make_entry("et_hypothesis", hyp, tolerance, count, true);
  hyp_entry.note = holds ? "Ricci semi-symmetric: chain checked" : "not Ricci semi-symmetric: chain not applicable";
  rep.entries.push_back(std::move(hyp_entry));

  const std::string na = "semi-symmetry hypothesis does not hold";
  auto gated = [&](const char* id, const Residual& r, bool informational = false) {
    if (!holds) return not_applicable_entry(id, chain_tolerance, na);
    return make_entry(id, r, chain_tolerance, count, informational);
  };
  rep.entries.push_back(gated("ricc", ricc));
  rep.entries.push_back(gated("etkkk", etkkk));
  rep.entries.push_back(gated("soni", soni));
  rep.entries.push_back(gated("soni_printed", soni_printed, true));

  if (a == 0.0 && b != 0.0 && b != 1.0)
    rep.entries.push_back(gated("sonii", sonii));
  else
    rep.entries.push_back(not_applicable_entry("sonii", chain_tolerance, "branch alpha = 0, beta not in {0, 1}"));

  if (b == 0.0 && std::abs(1 - a * a) <= 1e-12)
    rep.entries.push_back(vacuous_entry("soniii", chain_tolerance, "degenerate_zero_multiplier", soniii.value()));
  else if (b == 0.0)
    rep.entries.push_back(gated("soniii", soniii));
  else
    rep.entries.push_back(not_applicable_entry("soniii", chain_tolerance, "branch beta = 0"));

  if (!holds) {
    rep.entries.push_back(not_applicable_entry("classification", 1e-7, na));
    return rep;
  }
  EtaEinsteinFit fit;
  try {
    fit = eta_einstein_fit(*st, fit_samples);
  } catch (const RankDeficientError& e) {
    auto entry = not_applicable_entry("classification", 1e-7, e.what());
    rep.entries.push_back(std::move(entry));
    return rep;
  }
  bool consistent = fit.classification != EinsteinClass::None;
  if (b == 0.0) consistent = fit.classification == EinsteinClass::Einstein;
  else if (a == 0.0) consistent = fit.classification == EinsteinClass::Einstein ||
                                  fit.classification == EinsteinClass::EtaEinstein;
  IdentityEntry e = make_entry("classification", fit.residual, 1e-7, count);
  if (!consistent) e.status = Status::Fail;
  e.note = fmt("a=%.9g b=%.9g c=%.9g", fit.a, fit.b, fit.c) + " class=" + std::string(to_string(fit.classification));
  if (fit.phi_dependent) e.flags.push_back("phi_dependent");
  rep.entries.push_back(std::move(e));
  return rep;
}

}  // namespace lpv
