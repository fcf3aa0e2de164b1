#pragma once

// Seeded samplers shared by the solvers, metrology and the test suites.

#include <cstdint>
#include <random>

#include "bregproj/spaces.hpp"

namespace bregproj {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream derived from (seed, index); used for per-sample seeding.
  static Rng derive(std::uint64_t seed, std::uint64_t index);

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  int integer(int lo, int hi);  // inclusive

  Vec normal_vec(int n);
  Vec uniform_vec(int n, double lo, double hi);
  /// Uniform direction on the Euclidean unit sphere.
  Vec unit_vec(int n);
  /// Dirichlet(1,...,1) sample scaled to total mass s.
  Vec simplex(int n, double s = 1.0);

  CMat hermitian(int n);
  CMat unitary(int n);
  /// Random positive definite matrix with eigenvalues in [lo, hi].
  CMat positive_definite(int n, double lo, double hi);
  /// Full-rank density matrix (trace one).
  CMat density(int n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bregproj
