#pragma once

// Proximal maps, resolvents, cyclic projection algorithms and sampled
// quasinonexpansivity certificates.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bregproj/convex_sets.hpp"
#include "bregproj/potentials.hpp"
#include "bregproj/projections.hpp"

namespace bregproj {

class MonotoneMap {
 public:
  enum class Kind { gradient_of, linear, subdifferential_of_indicator };

  static MonotoneMap gradient_of(PotentialPtr f);
  /// x -> M x; the symmetric part of M must be positive semidefinite.
  static MonotoneMap linear(Mat M);
  /// x -> M x + c.
  static MonotoneMap affine(Mat M, Vec c);
  static MonotoneMap subdifferential_of_indicator(ConvexSet K);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const PotentialPtr& potential() const { return f_; }
  const Mat& matrix() const { return M_; }
  const ConvexSet& set() const { return K_; }

  bool single_valued() const { return kind_ != Kind::subdifferential_of_indicator; }
  bool in_domain(const Vec& x) const;
  /// Single-valued kinds only.
  Vec operator()(const Vec& x) const;
  Mat jacobian(const Vec& x) const;

 private:
  Kind kind_ = Kind::linear;
  int dim_ = 0;
  PotentialPtr f_;
  Mat M_;
  Vec c_;
  ConvexSet K_;
};

struct OperatorResult {
  Vec point;
  double residual = 0.0;  // defining-equation or optimality residual (dual norm)
  int iterations = 0;
  bool converged = false;
};

/// argmin_x f(x) + lambda D(x, y); f smooth on int dom Psi.
OperatorResult left_prox(const PotentialPtr& psi, const PotentialPtr& f, double lambda, const Vec& y, double tol = 0.0);
/// f = indicator of K.
OperatorResult left_prox(const PotentialPtr& psi, const ConvexSet& K, double lambda, const Vec& y, double tol = 0.0);

/// argmin_x f(x) + lambda D(y, x), computed as grad Psi* o lprox^{Psi*}_{lambda, f o grad Psi*} o grad Psi.
OperatorResult right_prox(const PotentialPtr& psi, const PotentialPtr& f, double lambda, const Vec& y, double tol = 0.0);
/// Khat in dual coordinates: the right projection.
OperatorResult right_prox(const PotentialPtr& psi, const ConvexSet& Khat, double lambda, const Vec& y, double tol = 0.0);

/// z with grad Psi(z) + lambda T(z) = grad Psi(x).
OperatorResult left_resolvent(const PotentialPtr& psi, const MonotoneMap& T, double lambda, const Vec& x,
                              double tol = 0.0);
/// grad Psi o lres o grad Psi*, a map on dual points.
OperatorResult right_resolvent(const PotentialPtr& psi, const MonotoneMap& T, double lambda, const Vec& xi,
                               double tol = 0.0);

enum class CyclicMode { naive_cyclic, dykstra_hilbert };

struct IterationTrace {
  std::vector<Vec> points;               // one per sweep, starting with y
  std::vector<double> divergence_to_target;  // D(target, x_k), empty without a target
  std::vector<double> step_norms;
  std::string stop_reason;
  int sweeps = 0;
  bool converged = false;

  const Vec& last() const { return points.back(); }
  /// step,x_0,...,x_{d-1},divergence
  std::string csv() const;
};

IterationTrace cyclic_project(const PotentialPtr& psi, const std::vector<ConvexSet>& sets, const Vec& y,
                              CyclicMode mode, int max_sweeps, double tol,
                              const std::optional<Vec>& target = std::nullopt);

struct QuasinonexpansiveReport {
  double left_sq = 0.0;    // worst D(p, T x) - D(p, x)
  double right_sq = 0.0;   // worst D(T x, p) - D(x, p)
  double left_firm = 0.0;  // worst lhs - rhs of the left firm inequality
  double fixed_point_error = 0.0;  // worst ||T p - p|| over the claimed fixed points
  int pairs = 0;
  bool is_left_sq(double slack = 1e-9) const { return left_sq <= slack; }
  bool is_right_sq(double slack = 1e-9) const { return right_sq <= slack; }
  bool is_left_firm(double slack = 1e-9) const { return left_firm <= slack; }
};

/// Violations are relative: raw / max(1, |largest term|).
QuasinonexpansiveReport certify_quasinonexpansive(const PotentialPtr& psi, const std::function<Vec(const Vec&)>& T,
                                                   const std::vector<Vec>& fixed_points,
                                                   const std::vector<Vec>& samples);

}  // namespace bregproj
