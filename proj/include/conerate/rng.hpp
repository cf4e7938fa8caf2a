#pragma once

#include <cstdint>
#include <random>

#include "conerate/linalg.hpp"

namespace conerate {

/// Seedable, splittable random stream.
///
/// A stream is identified by (seed, path); `split(k)` derives an independent
/// child stream whose output depends only on the parent's identity and `k`,
/// never on how much of the parent has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : Rng(seed, 0x9e3779b97f4a7c15ULL) {}

  Rng split(std::uint64_t stream) const { return Rng(seed_, mix(path_ ^ mix(stream + 1))); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return normal_(engine_); }

  Vector gaussian(Index n) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = normal();
    return x;
  }

  CVector complex_gaussian(Index n) {
    CVector x(n);
    for (Index i = 0; i < n; ++i) {
      const double re = normal();
      const double im = normal();
      x(i) = cplx(re, im);
    }
    return x;
  }

  /// Haar-distributed unit vector in ℂⁿ.
  CVector unit_vector(Index n) {
    CVector x = complex_gaussian(n);
    return x / x.norm();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  Rng(std::uint64_t seed, std::uint64_t path)
      : seed_(seed), path_(path), engine_(mix(seed ^ mix(path))) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t path_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace conerate
