#include "bregproj/divergence.hpp"

#include <algorithm>
#include <cmath>

#include "bregproj/error.hpp"

namespace bregproj {

DivergenceValue bregman(const Potential& psi, const SpacePoint& x, const SpacePoint& y) {
  if (x.coords().size() != psi.dim() || y.coords().size() != psi.dim())
    throw ShapeError("bregman: point dimension does not match potential");
  DivergenceValue d;
  d.left_in_domain = psi.in_domain(x.coords());
  d.right_in_interior = psi.in_interior(y.coords());
  d.value = psi.divergence(x.coords(), y.coords());
  return d;
}

double bregman(const Potential& psi, const Vec& x, const Vec& y) {
  if (x.size() != psi.dim() || y.size() != psi.dim()) throw ShapeError("bregman: point dimension does not match potential");
  return psi.divergence(x, y);
}

double one_sided_bregman(const Potential& psi, const Vec& x, const Vec& y, std::vector<double> steps) {
  if (steps.empty()) steps = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  if (steps.size() < 3) throw ValidationError("one_sided_bregman: need at least three steps");
  for (std::size_t k = 0; k + 1 < steps.size(); ++k)
    if (!(steps[k + 1] < steps[k]) || !(steps[k + 1] > 0))
      throw ValidationError("one_sided_bregman: steps must be positive and decreasing");
  const double vy = psi.value(y);
  if (!std::isfinite(vy)) return kInf;
  const double vx = psi.value(x);
  if (!std::isfinite(vx)) return kInf;
  const Vec h = x - y;
  if (h.norm() == 0.0) return 0.0;
  const double scale = 1.0 + std::abs(vx) + std::abs(vy);

  std::vector<double> q;
  for (double t : steps) q.push_back((psi.value(y + t * h) - vy) / t);
  for (double v : q)
    if (!std::isfinite(v) || std::abs(v) > 1e6 * scale) return kInf;

  // monotone drift without geometric contraction signals a -inf derivative
  const std::size_t m = q.size();
  bool monotone_down = true;
  for (std::size_t k = 0; k + 1 < m; ++k) monotone_down = monotone_down && q[k + 1] < q[k];
  const double d_first = q[0] - q[1];
  const double d_last = q[m - 2] - q[m - 1];
  if (monotone_down && d_last > 0.5 * d_first && d_last > 1e-6 * scale) return kInf;

  // Richardson for a first-order one-sided quotient; keep the most self-consistent pair
  std::vector<double> r;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double ratio = steps[k] / steps[k + 1];
    r.push_back((ratio * q[k + 1] - q[k]) / (ratio - 1.0));
  }
  std::size_t best = r.size() - 1;
  double best_gap = kInf;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    const double gap = std::abs(r[k + 1] - r[k]);
    if (gap < best_gap) {
      best_gap = gap;
      best = k + 1;
    }
  }
  return vx - vy - r[best];
}

double IdentityReport::max_residual() const {
  double m = std::max({affine_scaling, symmetric_sum, cosine, quadruple});
  if (std::isfinite(dual_swap)) m = std::max(m, dual_swap);
  return m;
}

namespace {

double rel(double lhs, double rhs, std::initializer_list<double> terms) {
  double s = 1.0;
  for (double t : terms) s = std::max(s, std::abs(t));
  s = std::max({s, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) / s;
}

}  // namespace

IdentityReport identity_suite(const Potential& psi, const Vec& x, const Vec& y, const Vec& z, const Vec& w, double l1,
                              double l2, const Vec& shift) {
  for (const Vec* p : {&x, &y, &z, &w})
    if (p->size() != psi.dim()) throw ShapeError("identity_suite: point dimension mismatch");
  for (const Vec* p : {&x, &y, &z, &w})
    if (!psi.in_interior(*p)) throw PreconditionError("identity_suite: all points must be interior");
  if (l1 < 0 || l2 < 0) throw ValidationError("identity_suite: weights must be nonnegative");

  IdentityReport r;
  const Vec gx = psi.gradient(x), gy = psi.gradient(y), gz = psi.gradient(z);

  {
    const SpaceDescriptor euclid = psi.space().is_matrix()
                                       ? SpaceDescriptor::hermitian(psi.space().n, NormSpec::schatten(2.0))
                                       : SpaceDescriptor::vectors(psi.dim(), NormSpec::lp(2.0));
    PotentialPtr self(std::shared_ptr<const Potential>(&psi, [](const Potential*) {}));
    PotentialPtr comb = make_combination(self, l1, make_hilbert(euclid), l2, shift, 1.0);
    const double lhs = comb->divergence(x, y);
    const double d1 = psi.divergence(x, y);
    const double d2 = 0.5 * (x - y).squaredNorm();
    r.affine_scaling = rel(lhs, l1 * d1 + l2 * d2, {l1 * d1, l2 * d2});
  }
  {
    const double dxy = psi.divergence(x, y), dyx = psi.divergence(y, x);
    const double rhs = (x - y).dot(gx - gy);
    r.symmetric_sum = rel(dxy + dyx, rhs, {dxy, dyx});
  }
  {
    const double lhs = psi.divergence(z, x);
    const double a = psi.divergence(z, y), b = psi.divergence(y, x), c = (z - y).dot(gx - gy);
    r.cosine = rel(lhs, a + b - c, {a, b, c});
  }
  {
    const double a = psi.divergence(z, x), b = psi.divergence(w, y);
    const double c = psi.divergence(z, y), d = psi.divergence(w, x), e = (z - w).dot(gx - gy);
    r.quadruple = rel(a + b, c + d - e, {a, b, c, d, e});
  }
  if (psi.has_conjugate()) {
    PotentialPtr self(std::shared_ptr<const Potential>(&psi, [](const Potential*) {}));
    PotentialPtr cv = conjugate_view(self);
    const double lhs = psi.divergence(x, y);
    const double rhs = cv->divergence(gy, gx);
    r.dual_swap = rel(lhs, rhs, {psi.value(x), psi.conjugate_value(gy), x.dot(gy)});
  } else {
    r.dual_swap = std::nan("");
  }
  return r;
}

AngleReport psi_angle(const Potential& psi, const Vec& x, const Vec& y, const Vec& z) {
  if (!psi.in_interior(y) || !psi.in_interior(z)) throw PreconditionError("psi_angle: y and z must be interior");
  const double a = norm(psi.space(), x - y);
  const double b = norm(psi.space(), z - y);
  if (a == 0.0 || b == 0.0) throw PreconditionError("psi_angle: difference vectors must be nonzero");
  AngleReport r;
  r.ratio = (x - y).dot(psi.gradient(z) - psi.gradient(y)) / (2.0 * a * b);
  r.angle = std::acos(std::clamp(r.ratio, -1.0, 1.0));
  return r;
}

}  // namespace bregproj
