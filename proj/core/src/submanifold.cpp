#include "lpverify/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "lpverify/sampling.hpp"

namespace lpv {
namespace {

constexpr double kCheckTol = 1e-9;
constexpr double kRankTol = 1e-9;
constexpr double kNullTol = 1e-8;
constexpr std::size_t kValidationPoints = 32;
constexpr std::uint64_t kValidationSeed = 0x5eed;

[[noreturn]] void fail(SubmanifoldError::Reason r, const std::string& what, const Point& p) {
  std::ostringstream os;
  os << what << " at (";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p.coords[i];
  os << ")";
  throw SubmanifoldError(r, os.str());
}

[[noreturn]] void fail(SubmanifoldError::Reason r, const std::string& what) { throw SubmanifoldError(r, what); }

// Metric Gram-Schmidt step. Appends the part of `v` orthogonal to `basis`
// when it is not null, normalised to g(v, v) = +-1.
bool extend_basis(std::vector<Eigen::VectorXd>& basis, Eigen::VectorXd v, const Eigen::MatrixXd& g) {
  const double len = v.norm();
  if (len < 1e-10) return false;
  v /= len;
  for (const auto& b : basis) v -= (b.dot(g * v) / b.dot(g * b)) * b;
  if (v.norm() < 1e-10) return false;
  v /= v.norm();
  const double q = v.dot(g * v);
  if (std::abs(q) < kNullTol) return false;
  basis.push_back(v / std::sqrt(std::abs(q)));
  return true;
}

Eigen::MatrixXd columns(const std::vector<Eigen::VectorXd>& vs, std::size_t rows) {
  Eigen::MatrixXd m(rows, vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(i) = vs[i];
  return m;
}

Eigen::VectorXd mask(const Eigen::VectorXd& c, const std::vector<std::size_t>& keep) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(c.size());
  for (std::size_t i : keep) r(i) = c(i);
  return r;
}

}  // namespace

SubmanifoldError::SubmanifoldError(Reason reason, const std::string& message)
    : ValidationError(std::string(to_string(reason)) + ": " + message), reason_(reason) {}

std::string_view to_string(SubmanifoldError::Reason r) noexcept {
  using R = SubmanifoldError::Reason;
  switch (r) {
    case R::BadEmbedding: return "bad embedding";
    case R::DegenerateMetric: return "degenerate metric";
    case R::XiNotTangent: return "xi not tangent";
    case R::NotOrthogonal: return "D and D_perp not orthogonal";
    case R::DNotInvariant: return "D not phi-invariant";
    case R::DPerpNotTotallyReal: return "D_perp not totally real";
    case R::OrientationUndetermined: return "orientation undetermined";
  }
  return "?";
}

std::string_view to_string(Orientation o) noexcept {
  return o == Orientation::XiHorizontal ? "xi_horizontal" : "xi_vertical";
}

SubmanifoldAt::SubmanifoldAt(const Submanifold& sub, const Point& p)
    : sub_(&sub), point_(p), ps_(sub.ambient(), p), phi_jet_(sub.ambient().phi_jet(p)) {
  const std::size_t n = sub.ambient_dimension();
  const std::size_t m = sub.dimension();
  const Eigen::MatrixXd& g = ps_.g;

  t_.resize(n, m);
  t_jet_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    t_jet_.push_back(sub.embedding().tangent_frame[i].jet(p));
    t_.col(i) = values(t_jet_.back());
  }
  const Eigen::MatrixXd gram = t_.transpose() * g * t_;
  if (std::abs(gram.determinant()) <= 1e-10)
    fail(SubmanifoldError::Reason::DegenerateMetric, "induced metric is degenerate", p);
  gram_inv_ = gram.inverse();

  std::vector<Eigen::VectorXd> nb;
  for (std::size_t k = 0; k < n && nb.size() < n - m; ++k)
    extend_basis(nb, nor(Eigen::VectorXd::Unit(n, k)), g);
  if (nb.size() != n - m) fail(SubmanifoldError::Reason::DegenerateMetric, "normal bundle metric is degenerate", p);
  normal_ = columns(nb, n);

  std::vector<Eigen::VectorXd> acc;
  for (std::size_t j : sub.d_perp()) extend_basis(acc, ps_.phi_of(t_.col(j)), g);
  phi_dp_ = columns(acc, n);
  const std::size_t first_mu = acc.size();
  for (const auto& v : nb) extend_basis(acc, v, g);
  mu_ = columns({acc.begin() + static_cast<std::ptrdiff_t>(first_mu), acc.end()}, n);
}

Eigen::VectorXd SubmanifoldAt::coefficients(const Eigen::VectorXd& v) const {
  return gram_inv_ * (t_.transpose() * (ps_.g * v));
}

Eigen::VectorXd SubmanifoldAt::d_mask(const Eigen::VectorXd& coeffs) const { return mask(coeffs, sub_->d()); }
Eigen::VectorXd SubmanifoldAt::d_perp_mask(const Eigen::VectorXd& coeffs) const {
  return mask(coeffs, sub_->d_perp());
}

Eigen::VectorXd SubmanifoldAt::p(const Eigen::VectorXd& v) const { return t_ * d_mask(coefficients(v)); }
Eigen::VectorXd SubmanifoldAt::q(const Eigen::VectorXd& v) const { return t_ * d_perp_mask(coefficients(v)); }

SplitVector SubmanifoldAt::split(const Eigen::VectorXd& v) const {
  SplitVector s;
  const Eigen::VectorXd c = coefficients(v);
  s.tangent = t_ * c;
  s.normal = v - s.tangent;
  s.p_part = t_ * d_mask(c);
  s.q_part = t_ * d_perp_mask(c);
  s.b_part = b(s.normal);
  s.c_part = this->c(s.normal);
  return s;
}

FieldJet SubmanifoldAt::field(const Eigen::VectorXd& coeffs) const {
  const std::size_t n = static_cast<std::size_t>(t_.rows());
  FieldJet y(n);
  for (std::size_t i = 0; i < t_jet_.size(); ++i) {
    if (coeffs(i) == 0.0) continue;
    for (std::size_t k = 0; k < n; ++k) y[k] += coeffs(i) * t_jet_[i][k];
  }
  return y;
}

FieldJet SubmanifoldAt::normal_field(const Eigen::VectorXd& nv) const {
  const std::size_t n = static_cast<std::size_t>(t_.rows());
  const std::size_t m = t_jet_.size();
  const Eigen::MatrixXd& g = ps_.g;

  // g T_j as jets
  std::vector<FieldJet> gt(m, FieldJet(n));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        if (g(k, l) != 0.0) gt[j][k] += g(k, l) * t_jet_[j][l];

  JetMatrix gram(m);
  std::vector<Jet> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) gram(i, j) += t_jet_[i][k] * gt[j][k];
    for (std::size_t k = 0; k < n; ++k)
      if (nv(k) != 0.0) rhs[i] += nv(k) * gt[i][k];
  }
  const std::vector<Jet> s = solve(gram, std::move(rhs), 1);

  FieldJet out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Jet(nv(k));
    for (std::size_t i = 0; i < m; ++i) out[k] -= t_jet_[i][k] * s[i];
  }
  return out;
}

FieldJet SubmanifoldAt::phi_field(const FieldJet& y) const {
  const std::size_t n = y.size();
  FieldJet out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out[k] += phi_jet_(k, j) * y[j];
  return out;
}

Point Submanifold::image(const std::vector<double>& u) const {
  Point p;
  p.coords.reserve(emb_.map.size());
  for (const auto& f : emb_.map) p.coords.push_back(f.eval(u));
  return p;
}

SubmanifoldPtr Submanifold::create(EmbeddingSpec emb, DistributionSplit split) {
  using R = SubmanifoldError::Reason;
  if (!emb.ambient) fail(R::BadEmbedding, "no ambient structure");
  const std::size_t n = emb.ambient->dimension();
  const std::size_t m = emb.coordinates.size();
  if (m == 0 || m >= n) fail(R::BadEmbedding, "sub-dimension must be between 1 and n-1");
  if (emb.map.size() != n) fail(R::BadEmbedding, "map needs one expression per ambient coordinate");
  if (emb.tangent_frame.size() != m) fail(R::BadEmbedding, "tangent frame needs one field per sub-coordinate");
  for (const auto& f : emb.tangent_frame)
    if (f.dimension() != n) fail(R::BadEmbedding, "tangent field has the wrong number of components");
  for (const auto& f : emb.map)
    if (f.arity() > m) fail(R::BadEmbedding, "map refers to an unknown sub-coordinate");
  if (!emb.domain.empty() && emb.domain.size() != m) fail(R::BadEmbedding, "domain needs one range per sub-coordinate");
  for (const auto& iv : emb.domain)
    if (!(iv.lo < iv.hi)) fail(R::BadEmbedding, "empty sub-domain range");

  std::vector<int> seen(m, 0);
  for (std::size_t i : split.d) {
    if (i >= m) fail(R::BadEmbedding, "D index out of range");
    ++seen[i];
  }
  for (std::size_t i : split.d_perp) {
    if (i >= m) fail(R::BadEmbedding, "D_perp index out of range");
    ++seen[i];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    fail(R::BadEmbedding, "D and D_perp must partition the tangent frame");

  auto sub = std::shared_ptr<Submanifold>(new Submanifold());
  sub->domain_ = emb.domain.empty() ? std::vector<Interval>(m) : emb.domain;
  sub->emb_ = std::move(emb);
  sub->split_ = std::move(split);
  std::sort(sub->split_.d.begin(), sub->split_.d.end());
  std::sort(sub->split_.d_perp.begin(), sub->split_.d_perp.end());

  std::vector<std::vector<Expr>> jac(n, std::vector<Expr>(m));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < m; ++a) jac[k][a] = sub->emb_.map[k].derivative(a);

  std::vector<std::vector<double>> pts;
  std::vector<double> centre;
  for (const auto& iv : sub->domain_) centre.push_back(0.5 * (iv.lo + iv.hi));
  pts.push_back(centre);
  Sampler s(kValidationSeed);
  for (std::size_t i = 0; i < kValidationPoints; ++i) {
    std::vector<double> u;
    for (const auto& iv : sub->domain_) u.push_back(s.uniform(iv.lo, iv.hi));
    pts.push_back(std::move(u));
  }

  const ManifoldSpec& spec = sub->ambient().spec();
  std::optional<Orientation> found;
  for (const auto& u : pts) {
    const Point p = sub->image(u);
    try {
      spec.check_point(p);
    } catch (const DomainError&) {
      fail(R::BadEmbedding, "image leaves the ambient domain", p);
    }

    Eigen::MatrixXd t(n, m);
    for (std::size_t i = 0; i < m; ++i) t.col(i) = sub->emb_.tangent_frame[i].value(p);
    Eigen::MatrixXd jc(n, m);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < m; ++a) jc(k, a) = jac[k][a].eval(u);
    const Eigen::MatrixXd jf = spec.frame_matrix(p).transpose().fullPivLu().solve(jc);

    auto rank_ok = [](const Eigen::MatrixXd& a) {
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
      return sv(0) > 0.0 && sv(sv.size() - 1) > kRankTol * sv(0);
    };
    if (!rank_ok(jf)) fail(R::BadEmbedding, "map is not an immersion", p);
    if (!rank_ok(t)) fail(R::BadEmbedding, "tangent frame is not linearly independent", p);
    const Eigen::MatrixXd off = jf - t * t.colPivHouseholderQr().solve(jf);
    if (off.cwiseAbs().maxCoeff() > 1e-8) fail(R::BadEmbedding, "tangent frame does not span the image tangent space", p);

    const SubmanifoldAt at(*sub, p);
    const PointStructure& ps = at.structure();
    if (at.nor(ps.xi).cwiseAbs().maxCoeff() > kCheckTol) fail(R::XiNotTangent, "xi has a normal component", p);
    for (std::size_t i : sub->split_.d)
      for (std::size_t j : sub->split_.d_perp)
        if (std::abs(ps.inner(t.col(i), t.col(j))) > kCheckTol)
          fail(R::NotOrthogonal, "tangent fields " + std::to_string(i) + " and " + std::to_string(j), p);
    for (std::size_t i : sub->split_.d) {
      const Eigen::VectorXd f = ps.phi_of(t.col(i));
      if ((f - at.p(f)).cwiseAbs().maxCoeff() > kCheckTol)
        fail(R::DNotInvariant, "phi of tangent field " + std::to_string(i) + " leaves D", p);
    }
    for (std::size_t j : sub->split_.d_perp)
      if (at.tan(ps.phi_of(t.col(j))).cwiseAbs().maxCoeff() > kCheckTol)
        fail(R::DPerpNotTotallyReal, "phi of tangent field " + std::to_string(j) + " is not normal", p);

    const bool in_d = at.q(ps.xi).cwiseAbs().maxCoeff() <= kCheckTol;
    const bool in_dp = at.p(ps.xi).cwiseAbs().maxCoeff() <= kCheckTol;
    if (!in_d && !in_dp) fail(R::OrientationUndetermined, "xi lies in neither D nor D_perp", p);
    const Orientation here = in_d ? Orientation::XiHorizontal : Orientation::XiVertical;
    if (found && *found != here) fail(R::OrientationUndetermined, "xi changes between D and D_perp", p);
    found = here;
  }
  sub->orientation_ = *found;
  if (sub->split_.orientation && *sub->split_.orientation != sub->orientation_)
    fail(R::OrientationUndetermined,
         "declared " + std::string(to_string(*sub->split_.orientation)) + " but xi is " +
             std::string(to_string(sub->orientation_)));
  return sub;
}

SubmanifoldPtr build_submanifold(EmbeddingSpec emb, DistributionSplit split) {
  return Submanifold::create(std::move(emb), std::move(split));
}

SubmanifoldPtr build_example3_leaf(double x0) {
  EmbeddingSpec emb;
  emb.ambient = build_example3();
  emb.coordinates = {"y", "z"};
  emb.map = {Expr::constant(x0), Expr::variable(0, "y"), Expr::variable(1, "z")};
  emb.tangent_frame = {FrameField::basis(0, 3), FrameField::basis(2, 3)};
  DistributionSplit split;
  split.d = {0, 1};
  split.orientation = Orientation::XiHorizontal;
  return Submanifold::create(std::move(emb), std::move(split));
}

SplitVector split_tangent_normal(const Submanifold& sub, const Eigen::VectorXd& x, const std::vector<double>& u) {
  return sub.at(u).split(x);
}

SecondFundamental second_fundamental_form(const Submanifold& sub, const Connection& conn, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y, const Eigen::VectorXd& n,
                                          const std::vector<double>& u) {
  if (conn.structure_ptr() != sub.ambient_ptr())
    throw ValidationError("connection belongs to a different ambient structure");
  const SubmanifoldAt at = sub.at(u);
  const ConnectionAt ca = conn.at(at.point());
  const Eigen::VectorXd xy = ca.nabla(x, at.field(at.coefficients(y)));
  const Eigen::VectorXd xn = ca.nabla(x, at.normal_field(n));
  SecondFundamental out;
  out.induced = at.tan(xy);
  out.h = at.nor(xy);
  out.weingarten = -at.tan(xn);
  out.normal_connection = at.nor(xn);
  return out;
}

}  // namespace lpv
