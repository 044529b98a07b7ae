#include "lpverify/frame.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "lpverify/errors.hpp"

namespace lpv {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDegeneracyTol = 1e-10;

std::vector<Point> validation_sample(const std::vector<Interval>& box, std::size_t count) {
  const std::size_t n = box.size();
  std::vector<Point> pts;
  Point centre;
  for (const auto& iv : box) centre.coords.push_back(0.5 * (iv.lo + iv.hi));
  pts.push_back(centre);
  if (n <= 6) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Point c;
      for (std::size_t a = 0; a < n; ++a) c.coords.push_back((mask >> a) & 1U ? box[a].hi : box[a].lo);
      pts.push_back(std::move(c));
    }
  }
  // Fixed seed: validation must not depend on the run's seed.
  std::mt19937_64 rng(0x5eedULL);
  for (std::size_t s = 0; s < count; ++s) {
    Point q;
    for (const auto& iv : box) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      q.coords.push_back(iv.lo + u * (iv.hi - iv.lo));
    }
    pts.push_back(std::move(q));
  }
  return pts;
}

}  // namespace

std::shared_ptr<const ManifoldSpec> ManifoldSpec::create(std::vector<std::string> coordinates,
                                                         std::vector<std::vector<Expr>> frame,
                                                         Eigen::MatrixXd metric, Options options) {
  const std::size_t n = coordinates.size();
  if (n == 0) throw ValidationError("manifold dimension must be positive");
  if (n > kMaxDim) throw ValidationError("dimension " + std::to_string(n) + " exceeds the supported maximum of " +
                                         std::to_string(kMaxDim));
  if (frame.size() != n)
    throw ValidationError("dimension mismatch: " + std::to_string(frame.size()) + " frame fields for " +
                          std::to_string(n) + " coordinates");
  for (std::size_t i = 0; i < n; ++i)
    if (frame[i].size() != n)
      throw ValidationError("dimension mismatch: frame field " + std::to_string(i + 1) + " has " +
                            std::to_string(frame[i].size()) + " components, expected " + std::to_string(n));
  for (const auto& row : frame)
    for (const auto& e : row)
      if (e.arity() > n) throw ValidationError("frame component refers to an unknown coordinate");
  if (metric.rows() != static_cast<Eigen::Index>(n) || metric.cols() != static_cast<Eigen::Index>(n))
    throw ValidationError("dimension mismatch: metric is " + std::to_string(metric.rows()) + "x" +
                          std::to_string(metric.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
  if (!metric.allFinite()) throw ValidationError("metric has non-finite entries");
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
    throw ValidationError("metric is not symmetric");
  const double det = metric.determinant();
  if (std::abs(det) <= kDegeneracyTol) throw ValidationError("degenerate metric (|det| <= 1e-10)");

  if (options.domain.empty()) options.domain.assign(n, Interval{});
  if (options.domain.size() != n) throw ValidationError("domain has the wrong number of intervals");
  for (const auto& iv : options.domain)
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo < iv.hi))
      throw ValidationError("domain interval must satisfy min < max");

  std::shared_ptr<ManifoldSpec> spec(new ManifoldSpec());
  spec->coordinates_ = std::move(coordinates);
  spec->metric_ = metric;
  spec->metric_inverse_ = metric.inverse();
  spec->domain_ = std::move(options.domain);

  bool diagonal_unit = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = metric(i, j);
      if (i == j ? std::abs(std::abs(v) - 1.0) > kSymmetryTol : std::abs(v) > kSymmetryTol) diagonal_unit = false;
    }
  if (diagonal_unit)
    for (std::size_t i = 0; i < n; ++i) spec->signature_.push_back(metric(i, i) > 0 ? 1.0 : -1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric, Eigen::EigenvaluesOnly);
  std::size_t negative = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) < 0) ++negative;
  if (options.claim == SignatureClaim::Lorentzian && negative != 1)
    throw ValidationError("metric declared lorentzian has " + std::to_string(negative) + " negative directions");
  if (options.claim == SignatureClaim::Riemannian && negative != 0)
    throw ValidationError("metric declared riemannian is not positive definite");

  spec->components_.reserve(n * n);
  spec->component_partials_.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      spec->components_.emplace_back(frame[i][a], n);
      for (std::size_t c = 0; c < n; ++c) spec->component_partials_.emplace_back(spec->components_.back().partial(c), n);
    }

  for (const auto& p : validation_sample(spec->domain_, options.validation_points)) {
    Eigen::MatrixXd e;
    try {
      e = spec->frame_matrix(p);
    } catch (const DomainError& err) {
      throw ValidationError(std::string("frame cannot be evaluated on the domain: ") + err.what());
    }
    double scale = 1.0;
    for (Eigen::Index r = 0; r < e.rows(); ++r) scale *= std::max(e.row(r).norm(), 1e-300);
    if (std::abs(e.determinant()) <= 1e-12 * scale)
      throw ValidationError("frame is not linearly independent at a validation point");
  }
  return spec;
}

void ManifoldSpec::check_point(const Point& p) const {
  if (p.size() != dimension())
    throw DomainError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(dimension()));
  for (std::size_t a = 0; a < p.size(); ++a) {
    const double v = p.coords[a];
    if (!std::isfinite(v)) throw DomainError("point has a non-finite coordinate");
    if (v < domain_[a].lo || v > domain_[a].hi)
      throw DomainError("point outside the domain in coordinate '" + coordinates_[a] + "'");
  }
}

Eigen::MatrixXd ManifoldSpec::frame_matrix(const Point& p) const {
  const std::size_t n = dimension();
  Eigen::MatrixXd e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) e(i, a) = components_[i * n + a].eval(p.span());
  return e;
}

void ManifoldSpec::frame_jets(const Point& p, JetMatrix& e, std::vector<JetMatrix>& de) const {
  const std::size_t n = dimension();
  e = JetMatrix(n);
  de.assign(n, JetMatrix(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      e(i, a) = components_[i * n + a].jet(p.span());
      for (std::size_t c = 0; c < n; ++c) de[c](i, a) = component_partials_[(i * n + a) * n + c].jet(p.span());
    }
}

LocalFrame::LocalFrame(const ManifoldSpec& spec, const Point& p)
    : spec_(&spec), n_(spec.dimension()), point_(p) {
  spec.check_point(p);
  JetMatrix e;
  std::vector<JetMatrix> de;
  spec.frame_jets(p, e, de);

  e_.resize(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t a = 0; a < n_; ++a) e_(i, a) = e(i, a).value;

  // F = E^{-1} as jets: E F = I.
  std::vector<Jet> ident(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) ident[i * n_ + i] = Jet(1.0);
  std::vector<Jet> f;
  try {
    f = solve(e, std::move(ident), n_);
  } catch (const ValidationError&) {
    throw DomainError("frame matrix is singular at the requested point");
  }
  e_inv_.resize(n_, n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t k = 0; k < n_; ++k) e_inv_(a, k) = f[a * n_ + k].value;

  // Coordinate bracket [nu_i, nu_j]^a = nu_i(E_j^a) - nu_j(E_i^a), then
  // frame components C^k_ij = sum_a [..]^a F(a, k).
  c_.assign(n_ * n_ * n_, Jet());
  std::vector<Jet> coord(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      for (std::size_t a = 0; a < n_; ++a) {
        Jet acc;
        for (std::size_t b = 0; b < n_; ++b) acc += e(i, b) * de[b](j, a) - e(j, b) * de[b](i, a);
        coord[a] = acc;
      }
      for (std::size_t k = 0; k < n_; ++k) {
        Jet acc;
        for (std::size_t a = 0; a < n_; ++a) acc += coord[a] * f[a * n_ + k];
        c_[(i * n_ + j) * n_ + k] = acc;
        c_[(j * n_ + i) * n_ + k] = -acc;
      }
    }
}

double LocalFrame::frame_derivative(std::size_t i, const Jet& f) const {
  double d = 0.0;
  for (std::size_t a = 0; a < n_; ++a) d += e_(i, a) * f.grad[a];
  return d;
}

double LocalFrame::derivative(const Eigen::VectorXd& u, const Jet& f) const {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    if (u(i) != 0.0) d += u(i) * frame_derivative(i, f);
  return d;
}

Eigen::VectorXd LocalFrame::to_coordinates(const Eigen::VectorXd& frame_components) const {
  return e_.transpose() * frame_components;
}

Eigen::VectorXd LocalFrame::to_frame(const Eigen::VectorXd& coordinate_components) const {
  return e_inv_.transpose() * coordinate_components;
}

Eigen::VectorXd LocalFrame::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = u(i) * v(j);
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) r(k) += w * structure(i, j, k).value;
    }
  return r;
}

FieldJet LocalFrame::bracket_jet(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  FieldJet r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = u(i) * v(j);
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) r[k] += w * structure(i, j, k);
    }
  return r;
}

Eigen::VectorXd LocalFrame::bracket(const FieldJet& x, const FieldJet& y) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      acc += x[i].value * frame_derivative(i, y[k]) - y[i].value * frame_derivative(i, x[k]);
      for (std::size_t j = 0; j < n_; ++j) acc += x[i].value * y[j].value * structure(i, j, k).value;
    }
    r(k) = acc;
  }
  return r;
}

double LocalFrame::inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return u.dot(spec_->metric() * v);
}

FrameField::FrameField(std::vector<Expr> coefficients, std::size_t dim) {
  if (coefficients.size() != dim) throw ValidationError("field has the wrong number of frame coefficients");
  coeffs_.reserve(dim);
  for (auto& c : coefficients) coeffs_.emplace_back(std::move(c), dim);
}

FrameField FrameField::basis(std::size_t index, std::size_t dim) {
  std::vector<Expr> c(dim, Expr::constant(0.0));
  c.at(index) = Expr::constant(1.0);
  return FrameField(std::move(c), dim);
}

FrameField FrameField::constant(const Eigen::VectorXd& components) {
  const auto n = static_cast<std::size_t>(components.size());
  std::vector<Expr> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(Expr::constant(components(i)));
  return FrameField(std::move(c), n);
}

Eigen::VectorXd FrameField::value(const Point& p) const {
  Eigen::VectorXd v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v(i) = coeffs_[i].eval(p.span());
  return v;
}

FieldJet FrameField::jet(const Point& p) const {
  FieldJet j;
  j.reserve(coeffs_.size());
  for (const auto& c : coeffs_) j.push_back(c.jet(p.span()));
  return j;
}

FrameField FrameField::scaled(const Expr& f) const {
  std::vector<Expr> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(f * x.expr());
  return FrameField(std::move(c), coeffs_.size());
}

FieldJet constant_jet(const Eigen::VectorXd& components) {
  FieldJet j(static_cast<std::size_t>(components.size()));
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = Jet(components(i));
  return j;
}

Eigen::VectorXd values(const FieldJet& field) {
  Eigen::VectorXd v(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) v(i) = field[i].value;
  return v;
}

VectorValue lie_bracket(const ManifoldSpec& spec, const FrameField& x, const FrameField& y, const Point& p) {
  if (x.dimension() != spec.dimension() || y.dimension() != spec.dimension())
    throw ValidationError("field dimension does not match the manifold");
  const LocalFrame lf(spec, p);
  return {lf.bracket(x.jet(p), y.jet(p)), Basis::Frame};
}

VectorValue to_frame_basis(const ManifoldSpec& spec, const VectorValue& v, const Point& p) {
  if (v.basis == Basis::Frame) return v;
  const LocalFrame lf(spec, p);
  return {lf.to_frame(v.components), Basis::Frame};
}

VectorValue to_coordinate_basis(const ManifoldSpec& spec, const VectorValue& v, const Point& p) {
  if (v.basis == Basis::Coordinate) return v;
  spec.check_point(p);
  return {spec.frame_matrix(p).transpose() * v.components, Basis::Coordinate};
}

double inner(const ManifoldSpec& spec, const VectorValue& x, const VectorValue& y, const Point& p) {
  const auto fx = to_frame_basis(spec, x, p);
  const auto fy = to_frame_basis(spec, y, p);
  if (fx.components.size() != static_cast<Eigen::Index>(spec.dimension()) ||
      fy.components.size() != static_cast<Eigen::Index>(spec.dimension()))
    throw ValidationError("vector dimension does not match the manifold");
  return fx.components.dot(spec.metric() * fy.components);
}

double directional_derivative(const ManifoldSpec& spec, const Expr& f, const FrameField& x, const Point& p) {
  spec.check_point(p);
  const std::size_t n = spec.dimension();
  const Eigen::MatrixXd e = spec.frame_matrix(p);
  const Eigen::VectorXd xv = x.value(p);
  const Eigen::VectorXd dir = e.transpose() * xv;
  double d = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    if (dir(a) != 0.0) d += dir(a) * f.derivative(a).eval(p.span());
  return d;
}

}  // namespace lpv
