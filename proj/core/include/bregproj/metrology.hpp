#pragma once

// Empirical measurements of the quantities continuity statements are phrased
// in: gradients, Holder exponents, moduli, monotonicity, total convexity.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bregproj/potentials.hpp"
#include "bregproj/random.hpp"

namespace bregproj {

struct PowerFit {
  double exponent = 0.0;
  double constant = 0.0;  // y ~ constant * x^exponent
};

/// Least squares of log y on log x over entries with positive x and y.
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Max over samples of the best relative central-difference error along the step ladder.
double gradient_check(const Potential& psi, const std::vector<Vec>& samples, std::vector<double> steps = {},
                      bool conjugate = false);

struct HolderReport {
  double exponent = 0.0;  // slope over the two finest distance decades
  double constant = 0.0;
  std::optional<double> predicted;
  double max_ratio = 0.0;    // max ||f(x)-f(y)|| / d^t at the predicted t
  double ratio_drift = 0.0;  // max over decades of (decade max ratio) / (coarsest decade max ratio)
  std::vector<double> decades;
  std::vector<double> decade_ratio;
  int samples = 0;
  double min_distance = 0.0, max_distance = 0.0;
  std::uint64_t seed = 0;
  bool drift_ok(double factor = 10.0) const { return ratio_drift <= factor; }
};

struct HolderProblem {
  std::function<Vec(const Vec&)> map;
  /// A pair of domain points at (roughly) the requested distance.
  std::function<std::pair<Vec, Vec>(Rng&, double)> sampler;
  std::function<double(const Vec&)> input_norm;
  std::function<double(const Vec&)> output_norm;
};

HolderReport estimate_holder(const HolderProblem& prob, int pairs, std::optional<double> predicted_t,
                             std::uint64_t seed, std::vector<double> decades = {});

struct ModulusReport {
  std::vector<double> eps;
  std::vector<double> delta;  // certified upper bounds of the infimum
  std::vector<double> rho;    // certified lower bounds of the supremum
  PowerFit delta_fit, rho_fit;
  std::uint64_t seed = 0;
  int budget = 0;
};

/// Clarkson delta(eps) and Lindenstrauss rho(tau) (tau on the same grid).
ModulusReport convexity_smoothness_moduli(const SpaceDescriptor& space, std::vector<double> eps, int budget,
                                          std::uint64_t seed);

struct MonotonicityReport {
  double fitted_c = 0.0;     // min of <x-y, j(x)-j(y)> / ||x-y||^r over the samples
  double worst_slack = 0.0;  // min of <x-y, j(x)-j(y)> - c ||x-y||^r
  int samples = 0;
};

/// Pairs drawn from the ball of `radius` (infinite: Gaussian cloud of scale 1).
MonotonicityReport monotonicity_strength(const SpaceDescriptor& space, const Gauge& gauge, double r, int samples,
                                         std::uint64_t seed, double radius = kInf);

struct TotalConvexityReport {
  std::vector<double> t;
  std::vector<double> nu;  // certified upper bounds of inf{D(y,x) : ||y-x|| = t}
  std::uint64_t seed = 0;
};

TotalConvexityReport total_convexity_modulus(const Potential& psi, const Vec& x, const std::vector<double>& t,
                                             int budget, std::uint64_t seed);

}  // namespace bregproj
