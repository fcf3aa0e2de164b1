#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <bregproj/potentials.hpp>
#include <bregproj/random.hpp>

#include "suites.hpp"

namespace bregproj::suites::detail {

inline int scaled(int n, const Options& opt) {
  return std::max(1, static_cast<int>(std::lround(n * opt.effort)));
}

/// |a - b| / max(1, |a|, |b|)
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_finite(double acc, double v) { return std::isnan(v) ? NAN : std::max(acc, v); }
inline double min_finite(double acc, double v) { return std::isnan(v) ? NAN : std::min(acc, v); }

struct Entry {
  std::string label;
  PotentialPtr psi;
  std::function<Vec(Rng&)> sample;  // interior points
};

/// Interior sampler for a catalog potential: spectra drawn per the inner
/// function and rotated by a Haar unitary on matrix spaces.
std::function<Vec(Rng&)> interior_sampler(const PotentialPtr& psi);

/// Catalog on the space: gauge phi_{1,1/4}, power_sum(1/3), kl, burg,
/// fermi_dirac, alpha(1/2), alpha(-1), squared_pnorm(1/3), quadratic.
/// Separable kinds become spectral lifts on matrix spaces.
std::vector<Entry> catalog(const SpaceDescriptor& space, Rng& rng);

std::string space_label(const SpaceDescriptor& s);

}  // namespace bregproj::suites::detail
