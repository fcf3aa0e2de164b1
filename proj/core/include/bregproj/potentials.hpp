#pragma once

// Convex Euler-Legendre potentials behind one evaluation interface.
// Points are passed as flat coordinates of the potential's space.

#include <memory>
#include <optional>
#include <string>

#include "bregproj/gauges.hpp"
#include "bregproj/spaces.hpp"

namespace bregproj {

enum class PotentialKind {
  gauge,
  power_sum,
  kl,
  burg,
  fermi_dirac,
  alpha_family,
  squared_pnorm,
  quadratic,
  spectral_lift,
  conjugate_view,
  combination
};

std::string to_string(PotentialKind kind);

struct PotentialEval {
  double value = 0.0;
  std::optional<SpacePoint> gradient;  // present iff in_interior
  bool in_interior = false;
};

class Potential;
using PotentialPtr = std::shared_ptr<const Potential>;

class Potential : public std::enable_shared_from_this<Potential> {
 public:
  explicit Potential(SpaceDescriptor space) : space_(std::move(space)) {}
  virtual ~Potential() = default;

  const SpaceDescriptor& space() const { return space_; }
  int dim() const { return space_.flat_dim(); }

  virtual PotentialKind kind() const = 0;
  virtual std::string name() const = 0;

  /// +inf outside the effective domain.
  virtual double value(const Vec& x) const = 0;
  virtual bool in_interior(const Vec& x) const = 0;
  /// Throws DomainError outside the interior.
  virtual Vec gradient(const Vec& x) const = 0;
  /// Defaults to central differences of the gradient.
  virtual Mat hessian(const Vec& x) const;

  virtual double conjugate_value(const Vec& y) const = 0;
  virtual bool conjugate_in_interior(const Vec& y) const = 0;
  virtual Vec conjugate_gradient(const Vec& y) const = 0;
  /// Defaults to the inverse Hessian at the conjugate gradient.
  virtual Mat conjugate_hessian(const Vec& y) const;

  /// D(x, y); +inf when y is not interior or x is outside the domain.
  virtual double divergence(const Vec& x, const Vec& y) const;

  virtual bool has_conjugate() const { return true; }
  /// Strict convexity on the interior (all catalog members qualify).
  virtual bool strictly_convex() const { return true; }
  /// Inner symmetric vector potential for spectral lifts, else null.
  virtual PotentialPtr spectral_inner() const { return nullptr; }
  /// Some point of the interior, used to seed solvers.
  virtual Vec interior_point() const;

  bool in_domain(const Vec& x) const;

  PotentialEval eval(const SpacePoint& x) const;
  PotentialEval conjugate_eval(const SpacePoint& y) const;

 protected:
  void check_shape(const Vec& x) const;

 private:
  SpaceDescriptor space_;
};

/// One-dimensional convex functions used coordinatewise and on spectra.
struct ScalarFunction {
  enum class Kind { power_sum, kl, burg, fermi_dirac, alpha };
  Kind kind = Kind::kl;
  double param = 0.0;  // gamma for power_sum, alpha for alpha

  static ScalarFunction power_sum(double gamma);
  static ScalarFunction kl() { return {Kind::kl, 0.0}; }
  static ScalarFunction burg() { return {Kind::burg, 0.0}; }
  static ScalarFunction fermi_dirac() { return {Kind::fermi_dirac, 0.0}; }
  static ScalarFunction alpha(double a);

  double value(double t) const;
  bool interior(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double conj(double s) const;
  bool conj_interior(double s) const;
  double conj_d1(double s) const;
  double conj_d2(double s) const;
  /// psi(a) - psi(b) - (a - b) psi'(b), evaluated without cancellation where possible.
  double divergence(double a, double b) const;
  double sample_interior(double u) const;  // u in (0,1) mapped into the interior
  std::string name() const;
  PotentialKind potential_kind() const;
};

// Vector catalog. Separable kinds act coordinatewise on vectors; on matrix
// spaces they are spectral lifts.
PotentialPtr make_separable(const SpaceDescriptor& space, ScalarFunction f);
PotentialPtr make_power_sum(const SpaceDescriptor& space, double gamma);
PotentialPtr make_kl(const SpaceDescriptor& space);
PotentialPtr make_burg(const SpaceDescriptor& space);
PotentialPtr make_fermi_dirac(const SpaceDescriptor& space);
PotentialPtr make_alpha(const SpaceDescriptor& space, double alpha);
/// 1/2 ||x||^2 in the p = 1/gamma norm (Schatten on matrix spaces).
PotentialPtr make_squared_pnorm(const SpaceDescriptor& space, double gamma);
/// 1/2 <T x, x>; the symmetric part of T must be positive definite.
PotentialPtr make_quadratic(const SpaceDescriptor& space, const Mat& T);
/// Psi_phi on the space norm.
PotentialPtr make_gauge_potential(const SpaceDescriptor& space, const Gauge& gauge);
/// 1/2 ||x||^2 in the space norm; the Hilbert gauge when the norm is Euclidean.
PotentialPtr make_hilbert(const SpaceDescriptor& space);

/// f o lambda on Hermitian n x n matrices. `f` must be a permutation symmetric
/// potential on R^n; symmetry is spot-checked and ValidationError raised otherwise.
PotentialPtr spectral_lift(const PotentialPtr& f, std::optional<SpaceDescriptor> matrix_space = std::nullopt);

/// Psi^* seen as a potential on dual coordinates (space carries the dual norm).
PotentialPtr conjugate_view(const PotentialPtr& psi);

/// l1 * psi1 + l2 * psi2 + <a, x> + c. No conjugate.
PotentialPtr make_combination(const PotentialPtr& psi1, double l1, const PotentialPtr& psi2, double l2, Vec a,
                              double c);

/// Finite-difference Hessian of an arbitrary gradient (symmetrized).
Mat numeric_hessian(const Potential& psi, const Vec& x, bool conjugate);

}  // namespace bregproj
