#pragma once

// Left and right D_Psi-projections, their certificates, pythagorean checks and
// the Alber decompositions.

#include <functional>
#include <string>
#include <vector>

#include "bregproj/convex_sets.hpp"
#include "bregproj/potentials.hpp"

namespace bregproj {

struct ProjectionOptions {
  double tol = 0.0;  // 0 selects 1e-8 (vectors) or 1e-7 (matrices)
  int max_iterations = 100000;
  int probes = 64;   // probe points for the variational residual
  std::uint64_t seed = 7;
};

double default_tolerance(const SpaceDescriptor& space);

struct ProjectionResult {
  Vec point;
  Vec dual_point;  // grad Psi(point)
  double objective = 0.0;
  double variational_residual = 0.0;
  Vec multipliers;
  int iterations = 0;
  bool converged = false;
  std::string method;
};

ProjectionResult left_project(const PotentialPtr& psi, const ConvexSet& K, const Vec& y, ProjectionOptions opt = {});
SpacePoint left_project(const PotentialPtr& psi, const ConvexSet& K, const SpacePoint& y);

/// grad Psi* o LP^{Psi*}_{Khat} o grad Psi. Khat must carry dual coordinates.
ProjectionResult right_project(const PotentialPtr& psi, const ConvexSet& Khat, const Vec& y, ProjectionOptions opt = {});

// Smooth convex minimization over a convex set, shared by the projection
// routines, the Alber dual part and the proximal maps.
struct SmoothProblem {
  std::function<double(const Vec&)> value;  // +inf outside the domain
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;   // optional
  std::function<bool(const Vec&)> interior;
};

struct SolveResult {
  Vec x;
  Vec multipliers;  // one per linear row of the set, or the ball multiplier
  int iterations = 0;
  bool converged = false;
  double stationarity = 0.0;
  std::string method;
};

/// Spectral projected gradient with nonmonotone Armijo steps, followed by an
/// active-set Newton polish on polyhedra and a KKT Newton polish on balls.
SolveResult minimize_over_set(const SmoothProblem& prob, const ConvexSet& K, const Vec& x0, double tol,
                              int max_iterations);

/// Worst violation of <u - z, g> >= 0 over probe points u of K (0 if none).
double variational_residual(const ConvexSet& K, const Vec& z, const Vec& g, int probes, std::uint64_t seed);

enum class Side { left, right };

struct PythagoreanReport {
  Side side = Side::left;
  Vec projection;
  bool converged = false;
  double variational_residual = 0.0;
  std::vector<double> residuals;  // relative: raw / max(1, |D(x,y)|)
  double min_residual = 0.0;
  double max_abs_residual = 0.0;
  bool equality_expected = false;
  bool passed = false;
};

/// Samples x in K (left) or x in grad Psi*(Khat) (right) and reports
/// D(x,y) - D(x,z) - D(z,y) for left, D(y,x) - D(y,z) - D(z,x) for right.
PythagoreanReport verify_pythagorean(const PotentialPtr& psi, const ConvexSet& K, const Vec& y, Side side, int probes,
                                     std::uint64_t seed, double tol = 0.0);

struct AlberReport {
  Vec left_part;          // LP_K(x)
  Vec dual_part;          // P_hat_{K polar}(grad Psi(x))
  double pairing_residual = 0.0;          // |<left_part, dual_part>|
  double reconstruction_residual = 0.0;   // ||x - grad Psi*(dual_part) - left_part||
  double dual_reconstruction_residual = 0.0;  // ||grad Psi(x) - dual_part - grad Psi(left_part)||_*
  bool converged = false;
};

/// Left decomposition for Psi_phi. K must be a cone (subspaces use the annihilator).
AlberReport alber_decompose(const SpaceDescriptor& space, const Gauge& gauge, const ConvexSet& K, const Vec& x,
                            double tol = 0.0);

}  // namespace bregproj
