#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "lpverify/frame.hpp"

namespace lpv {

inline constexpr std::size_t kDefaultSamples = 64;

/// Deterministic sample source. The engine only relies on mt19937_64's
/// raw output, which the standard fixes bit for bit, and maps it to
/// doubles by hand, so sequences are identical across platforms.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

  /// A point drawn uniformly from the domain box.
  Point point(const ManifoldSpec& spec);
  /// Constant frame coefficients, each uniform in [-1, 1].
  Eigen::VectorXd vector(std::size_t dim);

 private:
  std::mt19937_64 rng_;
};

std::vector<Point> sample_points(const ManifoldSpec& spec, std::uint64_t seed, std::size_t count);

/// Frame basis vectors followed by `extra` random constant combinations.
/// Identity checks loop over these at each sample point.
std::vector<Eigen::VectorXd> test_vectors(Sampler& sampler, std::size_t dim, std::size_t extra);

}  // namespace lpv
