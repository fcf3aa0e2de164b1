#include "bregproj/random.hpp"

#include <cmath>

namespace bregproj {

Rng Rng::derive(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x9e3779b9u};
  std::uint64_t s[1];
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  s[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return Rng(s[0]);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

int Rng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Vec Rng::normal_vec(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Rng::uniform_vec(int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Vec Rng::unit_vec(int n) {
  Vec v;
  do {
    v = normal_vec(n);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Vec Rng::simplex(int n, double s) {
  Vec v(n);
  std::exponential_distribution<double> e(1.0);
  for (int i = 0; i < n; ++i) v[i] = e(engine_) + 1e-300;
  return s * v / v.sum();
}

CMat Rng::hermitian(int n) {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(), normal());
  return 0.5 * (g + g.adjoint());
}

CMat Rng::unitary(int n) {
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(), normal());
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

CMat Rng::positive_definite(int n, double lo, double hi) {
  CMat u = unitary(n);
  Vec l = uniform_vec(n, lo, hi);
  CMat m = u * l.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (m + m.adjoint());
}

CMat Rng::density(int n) {
  CMat u = unitary(n);
  Vec l = simplex(n, 1.0);
  l = (l.array() + 1e-3).matrix();
  l /= l.sum();
  CMat m = u * l.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (m + m.adjoint());
}

}  // namespace bregproj
