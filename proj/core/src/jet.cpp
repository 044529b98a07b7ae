#include "lpverify/jet.hpp"

#include <utility>

#include "lpverify/errors.hpp"

namespace lpv {

DiffExpr::DiffExpr(Expr f, std::size_t dim) : f_(std::move(f)) {
  d_.reserve(dim);
  for (std::size_t a = 0; a < dim; ++a) d_.push_back(f_.derivative(a));
  constant_ = f_.is_constant();
}

Jet DiffExpr::jet(std::span<const double> x) const {
  Jet j(f_.eval(x));
  if (!constant_)
    for (std::size_t a = 0; a < d_.size(); ++a) j.grad[a] = d_[a].eval(x);
  return j;
}

std::vector<Jet> solve(const JetMatrix& a_in, std::vector<Jet> b, std::size_t cols) {
  const std::size_t n = a_in.n;
  JetMatrix a = a_in;
  double scale = 0.0;
  for (const auto& e : a.data) scale = std::max(scale, std::abs(e.value));
  const double tiny = 1e-13 * (scale > 0.0 ? scale : 1.0);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col).value) > std::abs(a(piv, col).value)) piv = r;
    if (std::abs(a(piv, col).value) <= tiny) throw ValidationError("singular matrix in jet solve");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      for (std::size_t c = 0; c < cols; ++c) std::swap(b[col * cols + c], b[piv * cols + c]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Jet f = a(r, col) / a(col, col);
      if (f.value == 0.0 && f.grad == Jet().grad) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < cols; ++c) b[r * cols + c] -= f * b[col * cols + c];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t c = 0; c < cols; ++c) {
      Jet acc = b[col * cols + c];
      for (std::size_t k = col + 1; k < n; ++k) acc -= a(col, k) * b[k * cols + c];
      b[col * cols + c] = acc / a(col, col);
    }
  }
  return b;
}

}  // namespace lpv
