#include "bregproj/gauges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bregproj/error.hpp"

namespace bregproj {

MonotoneGraph::MonotoneGraph(std::vector<std::pair<double, double>> vertices, double tail_slope)
    : tail_(tail_slope) {
  if (vertices.empty() || vertices.front().first != 0.0 || vertices.front().second != 0.0)
    throw ValidationError("monotone graph must start at (0, 0)");
  if (!(tail_slope >= 0.0)) throw ValidationError("tail slope must be nonnegative");
  for (const auto& p : vertices) {
    if (!std::isfinite(p.first) || !std::isfinite(p.second)) throw ValidationError("graph vertices must be finite");
    if (!v_.empty()) {
      if (p.first < v_.back().first || p.second < v_.back().second)
        throw ValidationError("graph vertices must be nondecreasing in both coordinates");
      if (p == v_.back()) continue;
    }
    v_.push_back(p);
  }
}

double MonotoneGraph::lower(double t) const {
  if (t < 0) throw DomainError("graph evaluated at negative argument");
  const double tl = v_.back().first;
  if (t > tl) return std::isinf(tail_) ? kInf : v_.back().second + tail_ * (t - tl);
  for (std::size_t k = 0; k < v_.size(); ++k) {
    if (v_[k].first == t) return v_[k].second;
    if (v_[k].first > t) {
      const auto& a = v_[k - 1];
      const auto& b = v_[k];
      return a.second + (b.second - a.second) * (t - a.first) / (b.first - a.first);
    }
  }
  return v_.back().second;
}

double MonotoneGraph::upper(double t) const {
  if (t < 0) throw DomainError("graph evaluated at negative argument");
  const double tl = v_.back().first;
  if (t > tl) return std::isinf(tail_) ? kInf : v_.back().second + tail_ * (t - tl);
  if (t == tl) return std::isinf(tail_) ? kInf : v_.back().second;
  for (std::size_t k = v_.size(); k-- > 0;) {
    if (v_[k].first == t) return v_[k].second;
    if (v_[k].first < t) {
      const auto& a = v_[k];
      const auto& b = v_[k + 1];
      return a.second + (b.second - a.second) * (t - a.first) / (b.first - a.first);
    }
  }
  return v_.front().second;
}

double MonotoneGraph::integral(double t) const {
  if (t <= 0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < v_.size(); ++k) {
    const auto& a = v_[k];
    const auto& b = v_[k + 1];
    if (a.first >= t) return acc;
    if (b.first == a.first) continue;
    const double hi = std::min(t, b.first);
    const double vb = a.second + (b.second - a.second) * (hi - a.first) / (b.first - a.first);
    acc += 0.5 * (a.second + vb) * (hi - a.first);
  }
  const double tl = v_.back().first;
  if (t <= tl) return acc;
  if (std::isinf(tail_)) return kInf;
  const double d = t - tl;
  return acc + v_.back().second * d + 0.5 * tail_ * d * d;
}

double MonotoneGraph::slope(double t) const {
  const double tl = v_.back().first;
  if (t >= tl) return tail_;
  for (std::size_t k = 0; k + 1 < v_.size(); ++k) {
    const auto& a = v_[k];
    const auto& b = v_[k + 1];
    if (a.first <= t && t < b.first) return (b.second - a.second) / (b.first - a.first);
  }
  return tail_;
}

MonotoneGraph MonotoneGraph::inverse() const {
  std::vector<std::pair<double, double>> w;
  w.reserve(v_.size());
  for (const auto& p : v_) w.emplace_back(p.second, p.first);
  double s;
  if (std::isinf(tail_)) s = 0.0;
  else if (tail_ == 0.0) s = kInf;
  else s = 1.0 / tail_;
  return MonotoneGraph(std::move(w), s);
}

bool MonotoneGraph::strictly_increasing() const {
  for (std::size_t k = 0; k + 1 < v_.size(); ++k)
    if (!(v_[k + 1].first > v_[k].first) || !(v_[k + 1].second > v_[k].second)) return false;
  return tail_ > 0.0 && std::isfinite(tail_);
}

Gauge Gauge::power(double alpha, double beta) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw ValidationError("power gauge: alpha must be positive");
  if (!(beta > 0 && beta < 1)) throw ValidationError("power gauge: beta must lie in (0, 1)");
  Gauge g;
  g.kind_ = Kind::power;
  g.alpha_ = alpha;
  g.beta_ = beta;
  return g;
}

Gauge Gauge::tabulated(std::vector<std::pair<double, double>> knots, double tail_slope) {
  if (!(tail_slope > 0) || !std::isfinite(tail_slope))
    throw ValidationError("tabulated gauge: tail slope must be positive and finite");
  Gauge g;
  g.kind_ = Kind::tabulated;
  g.graph_ = MonotoneGraph(std::move(knots), tail_slope);
  if (!g.graph_.strictly_increasing()) throw ValidationError("tabulated gauge must be strictly increasing");
  return g;
}

double Gauge::operator()(double t) const {
  if (t <= 0) return 0.0;
  if (kind_ == Kind::power) return std::pow(t, 1.0 / beta_ - 1.0) / alpha_;
  return graph_.lower(t);
}

double Gauge::derivative(double t) const {
  if (kind_ == Kind::power) {
    const double e = 1.0 / beta_ - 1.0;
    if (t <= 0) return e > 1 ? 0.0 : (e == 1 ? 1.0 / alpha_ : kInf);
    return e * std::pow(t, e - 1.0) / alpha_;
  }
  return graph_.slope(std::max(t, 0.0));
}

double Gauge::integral(double t) const {
  if (t <= 0) return 0.0;
  if (kind_ == Kind::power) return beta_ / alpha_ * std::pow(t, 1.0 / beta_);
  return graph_.integral(t);
}

double Gauge::inverse_value(double s) const {
  if (s <= 0) return 0.0;
  if (kind_ == Kind::power) return std::pow(alpha_ * s, beta_ / (1.0 - beta_));
  return graph_.inverse().lower(s);
}

Gauge Gauge::inverse() const {
  if (kind_ == Kind::power) return power(std::pow(alpha_, -beta_ / (1.0 - beta_)), 1.0 - beta_);
  Gauge g;
  g.kind_ = Kind::tabulated;
  g.graph_ = graph_.inverse();
  return g;
}

Quasigauge::Quasigauge(MonotoneGraph graph, bool right_continuous) : graph_(std::move(graph)), right_(right_continuous) {
  const auto& v = graph_.vertices();
  bool nonzero = graph_.tail_slope() > 0;
  for (const auto& p : v) nonzero = nonzero || p.second > 0;
  if (!nonzero) throw ValidationError("quasigauge must not vanish identically");
  if (std::isinf(graph_.tail_slope()) && v.back().first == 0.0)
    throw ValidationError("quasigauge must be finite somewhere right of 0");
}

Quasigauge Quasigauge::step(double jump, double height, bool right_continuous) {
  if (!(jump > 0) || !(height > 0)) throw ValidationError("step quasigauge needs positive jump and height");
  return Quasigauge(MonotoneGraph({{0.0, 0.0}, {jump, 0.0}, {jump, height}}, 0.0), right_continuous);
}

Quasigauge Quasigauge::from_gauge(const Gauge& g) {
  if (g.kind() != Gauge::Kind::tabulated)
    throw UnsupportedOperation("only tabulated gauges convert to polyline quasigauges");
  return Quasigauge(g.graph(), true);
}

double Quasigauge::operator()(double t) const { return right_ ? graph_.upper(t) : graph_.lower(t); }

Quasigauge Quasigauge::left_inverse() const { return Quasigauge(graph_.inverse(), false); }

Quasigauge Quasigauge::right_inverse() const { return Quasigauge(graph_.inverse(), true); }

InverseImages generalized_inverses(const Quasigauge& q) { return {q.left_inverse(), q.right_inverse()}; }

namespace {

template <class Integral>
double brute_force_conjugate(const Integral& F, double u, double resolution) {
  auto h = [&](double t) { return t * u - F(t); };
  // h is concave; find a bracket [0, T] containing a maximizer by doubling.
  double T = 1.0;
  double prev = h(T);
  bool bounded = false;
  for (int k = 0; k < 64; ++k) {
    const double next = h(2 * T);
    if (!(next > prev)) {
      bounded = true;
      T *= 2;
      break;
    }
    prev = next;
    T *= 2;
  }
  if (!bounded) return kInf;
  double best = h(0.0);
  const long steps = static_cast<long>(std::ceil(T / resolution));
  for (long i = 1; i <= steps; ++i) {
    const double t = std::min(T, static_cast<double>(i) * resolution);
    best = std::max(best, h(t));
  }
  return best;
}

ConjugateCheck finish(double lhs, double rhs) {
  ConjugateCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  if (std::isinf(lhs) && std::isinf(rhs)) c.residual = 0.0;
  else c.residual = std::abs(lhs - rhs);
  return c;
}

}  // namespace

ConjugateCheck conjugate_integral_check(const Quasigauge& q, double u, double resolution) {
  if (!(u >= 0)) throw ValidationError("conjugate_integral_check: u must be nonnegative");
  if (!(resolution > 0)) throw ValidationError("conjugate_integral_check: resolution must be positive");
  const Quasigauge inv = q.right_continuous() ? q.right_inverse() : q.left_inverse();
  const double lhs = brute_force_conjugate([&](double t) { return q.integral(t); }, u, resolution);
  return finish(lhs, inv.integral(u));
}

ConjugateCheck conjugate_integral_check(const Gauge& g, double u, double resolution) {
  if (!(u >= 0)) throw ValidationError("conjugate_integral_check: u must be nonnegative");
  if (!(resolution > 0)) throw ValidationError("conjugate_integral_check: resolution must be positive");
  const double lhs = brute_force_conjugate([&](double t) { return g.integral(t); }, u, resolution);
  return finish(lhs, g.inverse().integral(u));
}

GaugePotentialCore::GaugePotentialCore(SpaceDescriptor space, Gauge gauge)
    : space_(std::move(space)), gauge_(std::move(gauge)), inverse_(gauge_.inverse()) {
  space_.validate();
}

double GaugePotentialCore::value(const Eigen::Ref<const Vec>& x) const { return gauge_.integral(norm(space_, x)); }

Vec GaugePotentialCore::duality_map(const Eigen::Ref<const Vec>& x) const {
  const double r = norm(space_, x);
  if (r == 0.0) return Vec::Zero(x.size());
  return gauge_(r) * norm_gradient(space_, x);
}

double GaugePotentialCore::conjugate(const Eigen::Ref<const Vec>& y) const {
  return inverse_.integral(dual_norm(space_, y));
}

Vec GaugePotentialCore::conjugate_duality_map(const Eigen::Ref<const Vec>& y) const {
  const SpaceDescriptor d = space_.dual();
  const double r = norm(d, y);
  if (r == 0.0) return Vec::Zero(y.size());
  return inverse_(r) * norm_gradient(d, y);
}

double psi_phi_value(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& x) {
  return g.integral(norm(space, x.coords()));
}

double psi_phi_value(const SpaceDescriptor& space, const Quasigauge& q, const SpacePoint& x) {
  return q.integral(norm(space, x.coords()));
}

SpacePoint duality_map(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& x) {
  GaugePotentialCore core(space, g);
  return SpacePoint(space.dual(), core.duality_map(x.coords()));
}

SpacePoint duality_map(const SpaceDescriptor&, const Quasigauge&, const SpacePoint&) {
  throw UnsupportedOperation("duality_map: quasigauge duality maps are set-valued; use the conjugate lemma");
}

double psi_phi_conjugate(const SpaceDescriptor& space, const Gauge& g, const SpacePoint& y) {
  GaugePotentialCore core(space, g);
  return core.conjugate(y.coords());
}

}  // namespace bregproj
