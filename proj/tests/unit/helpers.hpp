#pragma once

#include <initializer_list>

#include <bregproj/spaces.hpp>

namespace bregproj::fixtures {

inline Vec V(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline CMat diag(std::initializer_list<double> xs) { return V(xs).cast<Complex>().asDiagonal(); }

inline CMat mat2(double a, double b, double c, double d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace bregproj::fixtures
