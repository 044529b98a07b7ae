#include "oracle.hpp"

#include <cmath>

namespace oracle {

Geometry example3() {
  Geometry g;
  g.frame = [](const VectorXd& x) {
    const double ez = std::exp(x(2));
    MatrixXd e(3, 3);
    e << 0, ez, 0, ez, ez, 0, 0, 0, 1;
    return e;
  };
  g.metric = Eigen::Vector3d(1, 1, -1).asDiagonal();
  g.phi = [](const VectorXd&) { return MatrixXd(Eigen::Vector3d(-1, -1, 0).asDiagonal()); };
  g.xi = [](const VectorXd&) { return VectorXd(Eigen::Vector3d(0, 0, 1)); };
  return g;
}

Engine::Engine(Geometry geo, double alpha, double beta, double h)
    : geo_(std::move(geo)), alpha_(alpha), beta_(beta), h_(h), n_(geo_.metric.rows()) {}

VectorXd Engine::to_coord(const VectorXd& x, const VectorXd& frame_v) const {
  return geo_.frame(x).transpose() * frame_v;
}

VectorXd Engine::to_frame(const VectorXd& x, const VectorXd& coord_v) const {
  return geo_.frame(x).transpose().fullPivLu().solve(coord_v);
}

MatrixXd Engine::coord_metric(const VectorXd& x) const {
  const MatrixXd einv = geo_.frame(x).inverse();
  return einv * geo_.metric * einv.transpose();
}

std::vector<MatrixXd> Engine::lc_christoffel(const VectorXd& x) const {
  std::vector<MatrixXd> dg(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    VectorXd xp = x, xm = x;
    xp(a) += h_;
    xm(a) -= h_;
    dg[a] = (coord_metric(xp) - coord_metric(xm)) / (2 * h_);
  }
  const MatrixXd ginv = coord_metric(x).inverse();
  std::vector<MatrixXd> gamma(n_, MatrixXd::Zero(n_, n_));
  for (std::size_t c = 0; c < n_; ++c)
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        double s = 0;
        for (std::size_t d = 0; d < n_; ++d) s += ginv(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
        gamma[c](a, b) = 0.5 * s;
      }
  return gamma;
}

std::vector<MatrixXd> Engine::christoffel(const VectorXd& x) const {
  std::vector<MatrixXd> gamma = lc_christoffel(x);
  if (alpha_ == 0.0 && beta_ == 0.0) return gamma;
  const MatrixXd e = geo_.frame(x);
  const MatrixXd to_f = e.transpose().inverse();  // column a: d/dx^a in frame components
  const MatrixXd& g = geo_.metric;
  const MatrixXd phi = geo_.phi(x);
  const VectorXd xi = geo_.xi(x);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const VectorXd u = to_f.col(a), v = to_f.col(b);
      const double eta_v = v.dot(g * xi);
      const VectorXd hf = alpha_ * (eta_v * u - u.dot(g * v) * xi) +
                          beta_ * (eta_v * (phi * u) - (phi * u).dot(g * v) * xi);
      const VectorXd hc = e.transpose() * hf;
      for (std::size_t c = 0; c < n_; ++c) gamma[c](a, b) += hc(c);
    }
  return gamma;
}

std::vector<MatrixXd> Engine::christoffel_partial(const VectorXd& x, std::size_t a) const {
  VectorXd xp = x, xm = x;
  xp(a) += h_;
  xm(a) -= h_;
  auto gp = christoffel(xp), gm = christoffel(xm);
  for (std::size_t c = 0; c < n_; ++c) gp[c] = (gp[c] - gm[c]) / (2 * h_);
  return gp;
}

VectorXd Engine::nabla_frame(const VectorXd& x, std::size_t i, std::size_t j) const {
  const auto gamma = christoffel(x);
  const VectorXd u = geo_.frame(x).row(i).transpose();
  const VectorXd v = geo_.frame(x).row(j).transpose();
  VectorXd out = VectorXd::Zero(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    VectorXd xp = x, xm = x;
    xp(a) += h_;
    xm(a) -= h_;
    const VectorXd dv = (geo_.frame(xp).row(j) - geo_.frame(xm).row(j)).transpose() / (2 * h_);
    out += u(a) * dv;
  }
  for (std::size_t c = 0; c < n_; ++c) out(c) += u.dot(gamma[c] * v);
  return to_frame(x, out);
}

VectorXd Engine::bracket_frame(const VectorXd& x, std::size_t i, std::size_t j) const {
  const MatrixXd e = geo_.frame(x);
  VectorXd out = VectorXd::Zero(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    VectorXd xp = x, xm = x;
    xp(a) += h_;
    xm(a) -= h_;
    const MatrixXd de = (geo_.frame(xp) - geo_.frame(xm)) / (2 * h_);
    out += e(i, a) * de.row(j).transpose() - e(j, a) * de.row(i).transpose();
  }
  return to_frame(x, out);
}

VectorXd Engine::riemann(const VectorXd& x, const VectorXd& u, const VectorXd& v, const VectorXd& w) const {
  const VectorXd uc = to_coord(x, u), vc = to_coord(x, v), wc = to_coord(x, w);
  const auto gamma = christoffel(x);
  std::vector<std::vector<MatrixXd>> dgamma(n_);
  for (std::size_t a = 0; a < n_; ++a) dgamma[a] = christoffel_partial(x, a);
  // R(d_a, d_b) d_c = (d_a G^d_bc - d_b G^d_ac + G^e_bc G^d_ae - G^e_ac G^d_be) d_d
  VectorXd out = VectorXd::Zero(n_);
  for (std::size_t d = 0; d < n_; ++d)
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c) {
          double r = dgamma[a][d](b, c) - dgamma[b][d](a, c);
          for (std::size_t e = 0; e < n_; ++e) r += gamma[e](b, c) * gamma[d](a, e) - gamma[e](a, c) * gamma[d](b, e);
          out(d) += r * uc(a) * vc(b) * wc(c);
        }
  return to_frame(x, out);
}

double Engine::ricci(const VectorXd& x, const VectorXd& u, const VectorXd& v) const {
  double s = 0;
  for (std::size_t a = 0; a < n_; ++a) {
    const VectorXd ea = to_frame(x, VectorXd::Unit(n_, a));
    s += to_coord(x, riemann(x, ea, u, v))(a);
  }
  return s;
}

VectorXd Engine::torsion(const VectorXd& x, const VectorXd& u, const VectorXd& v) const {
  const VectorXd uc = to_coord(x, u), vc = to_coord(x, v);
  const auto gamma = christoffel(x);
  VectorXd out(n_);
  for (std::size_t c = 0; c < n_; ++c) out(c) = uc.dot((gamma[c] - gamma[c].transpose()) * vc);
  return to_frame(x, out);
}

VectorXd second_fundamental(const Engine& lc, const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& u,
                            std::size_t i, std::size_t j, double h) {
  const std::size_t m = u.size();
  const VectorXd x = f(u);
  const std::size_t n = x.size();
  MatrixXd t(n, m);
  for (std::size_t k = 0; k < m; ++k) {
    VectorXd up = u, um = u;
    up(k) += h;
    um(k) -= h;
    t.col(k) = (f(up) - f(um)) / (2 * h);
  }
  auto shifted = [&](double si, double sj) {
    VectorXd w = u;
    w(i) += si;
    w(j) += sj;
    return f(w);
  };
  const VectorXd ddf = (shifted(h, h) - shifted(h, -h) - shifted(-h, h) + shifted(-h, -h)) / (4 * h * h);
  const auto gamma = lc.christoffel(x);
  VectorXd w = ddf;
  for (std::size_t c = 0; c < n; ++c) w(c) += t.col(i).dot(gamma[c] * t.col(j));
  const MatrixXd g = lc.coord_metric(x);
  const MatrixXd gram = t.transpose() * g * t;
  return w - t * gram.partialPivLu().solve(t.transpose() * g * w);
}

}  // namespace oracle
