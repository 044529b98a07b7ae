#include "lpverify/sampling.hpp"

namespace lpv {

Point Sampler::point(const ManifoldSpec& spec) {
  Point p;
  p.coords.reserve(spec.dimension());
  for (const auto& iv : spec.domain()) p.coords.push_back(uniform(iv.lo, iv.hi));
  return p;
}

Eigen::VectorXd Sampler::vector(std::size_t dim) {
  Eigen::VectorXd v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = uniform(-1.0, 1.0);
  return v;
}

std::vector<Point> sample_points(const ManifoldSpec& spec, std::uint64_t seed, std::size_t count) {
  Sampler s(seed);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(s.point(spec));
  return pts;
}

std::vector<Eigen::VectorXd> test_vectors(Sampler& sampler, std::size_t dim, std::size_t extra) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(dim + extra);
  for (std::size_t i = 0; i < dim; ++i) out.push_back(Eigen::VectorXd::Unit(dim, i));
  for (std::size_t i = 0; i < extra; ++i) out.push_back(sampler.vector(dim));
  return out;
}

}  // namespace lpv
