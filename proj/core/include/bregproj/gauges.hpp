#pragma once

// Gauges, quasigauges, the induced potentials Psi_phi and duality maps j_phi.

#include <limits>
#include <utility>
#include <vector>

#include "bregproj/spaces.hpp"

namespace bregproj {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A nondecreasing [0, inf]-valued function on [0, inf) stored as the graph of a
/// polyline: vertices starting at (0, 0) (vertical and horizontal pieces allowed)
/// followed by an unbounded tail. A vertical tail means the value is +inf past
/// the last vertex. At a jump the graph holds every value between the two
/// one-sided limits; `lower` and `upper` pick the left and right limits.
class MonotoneGraph {
 public:
  MonotoneGraph() = default;
  /// tail_slope = +inf encodes a vertical tail.
  MonotoneGraph(std::vector<std::pair<double, double>> vertices, double tail_slope);

  const std::vector<std::pair<double, double>>& vertices() const { return v_; }
  double tail_slope() const { return tail_; }

  double lower(double t) const;  // left limit (value at t for left-continuous functions)
  double upper(double t) const;  // right limit
  /// Integral of the function over [0, t] (same for either continuity choice).
  double integral(double t) const;
  /// Slope of the polyline at t (right derivative; +inf on vertical pieces).
  double slope(double t) const;

  /// Axis-swapped graph; lower/upper of the result are phi^vee / phi^wedge.
  MonotoneGraph inverse() const;

  bool strictly_increasing() const;

 private:
  std::vector<std::pair<double, double>> v_;
  double tail_ = 1.0;
};

class Gauge {
 public:
  enum class Kind { power, tabulated };

  /// phi_{alpha,beta}(t) = t^{1/beta - 1} / alpha, alpha > 0, beta in (0,1).
  static Gauge power(double alpha, double beta);
  /// Piecewise-linear through `knots` (first knot (0,0), strictly increasing),
  /// continued with slope `tail_slope` > 0.
  static Gauge tabulated(std::vector<std::pair<double, double>> knots, double tail_slope);
  /// phi(t) = t, the Hilbert gauge 1/2 ||x||^2.
  static Gauge identity() { return power(1.0, 0.5); }
  /// phi(t) = t^{r-1}; the power gauge with alpha = 1, beta = 1/r.
  static Gauge monomial(double r) { return power(1.0, 1.0 / r); }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const MonotoneGraph& graph() const { return graph_; }

  double operator()(double t) const;
  double derivative(double t) const;
  /// int_0^t phi.
  double integral(double t) const;
  double inverse_value(double s) const;
  /// The gauge phi^{-1}.
  Gauge inverse() const;

 private:
  Kind kind_ = Kind::power;
  double alpha_ = 1.0;
  double beta_ = 0.5;
  MonotoneGraph graph_;
};

class Quasigauge {
 public:
  Quasigauge() = default;
  Quasigauge(MonotoneGraph graph, bool right_continuous);

  /// 0 on [0, jump), `height` from `jump` on.
  static Quasigauge step(double jump, double height, bool right_continuous = true);
  static Quasigauge from_gauge(const Gauge& g);

  const MonotoneGraph& graph() const { return graph_; }
  bool right_continuous() const { return right_; }

  double operator()(double t) const;
  double integral(double t) const { return graph_.integral(t); }

  /// phi^vee(s) = inf{t : phi(t) >= s}, left-continuous.
  Quasigauge left_inverse() const;
  /// phi^wedge(s) = sup{t : phi(t) <= s}, right-continuous.
  Quasigauge right_inverse() const;

 private:
  MonotoneGraph graph_;
  bool right_ = true;
};

struct InverseImages {
  Quasigauge left;   // phi^vee
  Quasigauge right;  // phi^wedge
};

InverseImages generalized_inverses(const Quasigauge& q);

struct ConjugateCheck {
  double lhs = 0.0;       // brute-force sup_t {t u - int_0^t phi}
  double rhs = 0.0;       // int_0^u of the generalized inverse
  double residual = 0.0;  // |lhs - rhs|, zero when both are +inf
};

/// Uses phi^wedge for right-continuous q and phi^vee for left-continuous q.
ConjugateCheck conjugate_integral_check(const Quasigauge& q, double u, double resolution);
/// Same check for a gauge, with rhs the integral of phi^{-1}.
ConjugateCheck conjugate_integral_check(const Gauge& g, double u, double resolution);

/// Psi_phi(x) = int_0^{||x||} phi on a normed model space.
class GaugePotentialCore {
 public:
  GaugePotentialCore(SpaceDescriptor space, Gauge gauge);

  const SpaceDescriptor& space() const { return space_; }
  const Gauge& gauge() const { return gauge_; }

  double value(const Eigen::Ref<const Vec>& x) const;
  Vec duality_map(const Eigen::Ref<const Vec>& x) const;
  double conjugate(const Eigen::Ref<const Vec>& y) const;
  /// j of the dual space with gauge phi^{-1}; inverts duality_map.
  Vec conjugate_duality_map(const Eigen::Ref<const Vec>& y) const;

 private:
  SpaceDescriptor space_;
  Gauge gauge_;
  Gauge inverse_;
};

double psi_phi_value(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& x);
/// Quasigauge potentials may be +inf.
double psi_phi_value(const SpaceDescriptor& space, const Quasigauge& q, const SpacePoint& x);
SpacePoint duality_map(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& x);
/// Always throws UnsupportedOperation; quasigauge duality maps are set-valued.
SpacePoint duality_map(const SpaceDescriptor& space, const Quasigauge& q, const SpacePoint& x);
double psi_phi_conjugate(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& y);

}  // namespace bregproj
