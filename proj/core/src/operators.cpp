#include "bregproj/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "bregproj/error.hpp"

namespace bregproj {

MonotoneMap MonotoneMap::gradient_of(PotentialPtr f) {
  if (!f) throw ValidationError("monotone map: null potential");
  MonotoneMap T;
  T.kind_ = Kind::gradient_of;
  T.dim_ = f->dim();
  T.f_ = std::move(f);
  return T;
}

MonotoneMap MonotoneMap::linear(Mat M) { return affine(std::move(M), Vec()); }

MonotoneMap MonotoneMap::affine(Mat M, Vec c) {
  if (M.rows() != M.cols() || M.rows() == 0) throw ShapeError("monotone map: matrix must be square");
  if (c.size() == 0) c = Vec::Zero(M.rows());
  if (c.size() != M.rows()) throw ShapeError("monotone map: offset has wrong length");
  const Mat S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, S.norm()))
    throw ValidationError("monotone map: symmetric part is not positive semidefinite");
  MonotoneMap T;
  T.kind_ = Kind::linear;
  T.dim_ = static_cast<int>(M.rows());
  T.M_ = std::move(M);
  T.c_ = std::move(c);
  return T;
}

MonotoneMap MonotoneMap::subdifferential_of_indicator(ConvexSet K) {
  K.validate();
  MonotoneMap T;
  T.kind_ = Kind::subdifferential_of_indicator;
  T.dim_ = K.dim;
  T.K_ = std::move(K);
  return T;
}

bool MonotoneMap::in_domain(const Vec& x) const {
  switch (kind_) {
    case Kind::gradient_of: return f_->in_interior(x);
    case Kind::linear: return x.allFinite();
    case Kind::subdifferential_of_indicator: return violation(K_, x) <= 1e-12 * (1.0 + x.norm());
  }
  return false;
}

Vec MonotoneMap::operator()(const Vec& x) const {
  if (x.size() != dim_) throw ShapeError("monotone map: point has wrong dimension");
  switch (kind_) {
    case Kind::gradient_of: return f_->gradient(x);
    case Kind::linear: return M_ * x + c_;
    case Kind::subdifferential_of_indicator:
      throw UnsupportedOperation("monotone map: the normal cone is set-valued");
  }
  return {};
}

Mat MonotoneMap::jacobian(const Vec& x) const {
  switch (kind_) {
    case Kind::gradient_of: return f_->hessian(x);
    case Kind::linear: return M_;
    case Kind::subdifferential_of_indicator:
      throw UnsupportedOperation("monotone map: the normal cone is set-valued");
  }
  return {};
}

namespace {

double resolve_tol(const PotentialPtr& psi, double tol) { return tol > 0 ? tol : default_tolerance(psi->space()); }

void check_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw ValidationError("lambda must be positive and finite");
}

struct NewtonOut {
  Vec x;
  int iterations = 0;
  double gnorm = 0.0;
};

// Damped Newton for a smooth strictly convex function on an open domain.
NewtonOut newton_minimize(const std::function<double(const Vec&)>& value,
                          const std::function<Vec(const Vec&)>& grad, const std::function<Mat(const Vec&)>& hess,
                          const std::function<bool(const Vec&)>& interior, Vec x, int max_iter) {
  NewtonOut out;
  double f = value(x);
  Vec g = grad(x);
  const double scale = 1.0 + g.norm();
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    if (g.norm() <= 1e-14 * scale) break;
    Mat H = hess(x);
    H += (1e-14 * (1.0 + H.diagonal().cwiseAbs().maxCoeff())) * Mat::Identity(x.size(), x.size());
    Vec d = -H.ldlt().solve(g);
    if (!d.allFinite() || g.dot(d) >= 0) d = -g;
    double t = 1.0;
    bool ok = false;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      const Vec xt = x + t * d;
      if (!interior(xt)) continue;
      const double ft = value(xt);
      const Vec gt = grad(xt);
      if (ft <= f + 1e-4 * t * g.dot(d) || gt.norm() < 0.5 * g.norm()) {
        const bool progress = gt.norm() < g.norm() || ft < f;
        x = xt;
        f = ft;
        g = gt;
        ok = progress;
        break;
      }
    }
    if (!ok) break;
  }
  out.x = x;
  out.gnorm = g.norm();
  return out;
}

// Newton on a root problem R(x) = 0 with the merit ||R||.
NewtonOut newton_root(const std::function<Vec(const Vec&)>& R, const std::function<Mat(const Vec&)>& J,
                      const std::function<bool(const Vec&)>& interior, Vec x, int max_iter) {
  NewtonOut out;
  Vec r = R(x);
  const double scale = 1.0 + r.norm();
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    if (r.norm() <= 1e-14 * scale) break;
    Vec d = J(x).partialPivLu().solve(-r);
    if (!d.allFinite()) break;
    double t = 1.0;
    bool ok = false;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      const Vec xt = x + t * d;
      if (!interior(xt)) continue;
      const Vec rt = R(xt);
      if (rt.allFinite() && rt.norm() <= (1.0 - 1e-4 * t) * r.norm()) {
        x = xt;
        r = rt;
        ok = true;
        break;
      }
    }
    if (!ok) break;
  }
  out.x = x;
  out.gnorm = r.norm();
  return out;
}

Vec prox_start(const Potential& psi, const Potential& f, const Vec& y) {
  if (f.in_interior(y)) return y;
  const Vec w = f.interior_point();
  if (psi.in_interior(w)) return w;
  for (double tau = 1e-6; tau <= 1.0; tau *= 4.0) {
    const Vec c = (1.0 - tau) * y + tau * w;
    if (psi.in_interior(c) && f.in_interior(c)) return c;
  }
  throw PreconditionError("prox: dom f does not meet the interior of dom Psi");
}

}  // namespace

OperatorResult left_prox(const PotentialPtr& psi, const PotentialPtr& f, double lambda, const Vec& y, double tol) {
  check_lambda(lambda);
  if (!psi || !f) throw ValidationError("left_prox: null potential");
  if (f->dim() != psi->dim() || y.size() != psi->dim()) throw ShapeError("left_prox: dimension mismatch");
  if (!psi->in_interior(y)) throw PreconditionError("left_prox: y must lie in the domain interior");
  tol = resolve_tol(psi, tol);
  const Vec theta = psi->gradient(y);
  auto value = [&](const Vec& x) { return f->value(x) + lambda * (psi->value(x) - x.dot(theta)); };
  auto grad = [&](const Vec& x) { return Vec(f->gradient(x) + lambda * (psi->gradient(x) - theta)); };
  auto hess = [&](const Vec& x) { return Mat(f->hessian(x) + lambda * psi->hessian(x)); };
  auto interior = [&](const Vec& x) { return psi->in_interior(x) && f->in_interior(x); };
  NewtonOut n = newton_minimize(value, grad, hess, interior, prox_start(*psi, *f, y), 500);
  OperatorResult r;
  r.point = n.x;
  r.iterations = n.iterations;
  r.residual = dual_norm(psi->space(), grad(n.x)) / std::max(1.0, lambda * dual_norm(psi->space(), theta));
  r.converged = r.residual <= tol;
  return r;
}

OperatorResult left_prox(const PotentialPtr& psi, const ConvexSet& K, double lambda, const Vec& y, double tol) {
  check_lambda(lambda);
  ProjectionOptions opt;
  opt.tol = tol;
  const ProjectionResult p = left_project(psi, K, y, opt);
  return {p.point, p.variational_residual, p.iterations, p.converged};
}

OperatorResult right_prox(const PotentialPtr& psi, const PotentialPtr& f, double lambda, const Vec& y, double tol) {
  check_lambda(lambda);
  if (!psi || !f) throw ValidationError("right_prox: null potential");
  if (f->dim() != psi->dim() || y.size() != psi->dim()) throw ShapeError("right_prox: dimension mismatch");
  if (!psi->in_interior(y)) throw PreconditionError("right_prox: y must lie in the domain interior");
  if (!psi->has_conjugate()) throw UnsupportedOperation("right_prox: potential has no conjugate");
  tol = resolve_tol(psi, tol);
  const Vec theta = psi->gradient(y);
  const double conj_theta = psi->conjugate_value(theta);

  // phi(eta) = f(grad Psi*(eta)) + lambda D_{Psi*}(eta, theta)
  auto admissible = [&](const Vec& eta) {
    if (!psi->conjugate_in_interior(eta)) return false;
    return f->in_interior(psi->conjugate_gradient(eta));
  };
  auto phi = [&](const Vec& eta) {
    const Vec x = psi->conjugate_gradient(eta);
    return f->value(x) + lambda * (psi->conjugate_value(eta) - conj_theta - (eta - theta).dot(y));
  };
  auto dphi = [&](const Vec& eta) {
    const Vec x = psi->conjugate_gradient(eta);
    return Vec(psi->conjugate_hessian(eta) * f->gradient(x) + lambda * (x - y));
  };

  Vec eta = theta;
  if (!admissible(eta)) {
    const Vec s = prox_start(*psi, *f, y);
    eta = psi->gradient(s);
  }
  double val = phi(eta);
  Vec g = dphi(eta);
  Mat Hs = psi->conjugate_hessian(eta);
  Mat model = Hs * f->hessian(psi->conjugate_gradient(eta)) * Hs + lambda * Hs;
  model = 0.5 * (model + model.transpose());
  Mat B = model.ldlt().solve(Mat::Identity(eta.size(), eta.size()));
  if (!B.allFinite()) B = Mat::Identity(eta.size(), eta.size());
  const double scale = 1.0 + g.norm();
  OperatorResult r;
  for (r.iterations = 0; r.iterations < 2000; ++r.iterations) {
    if (g.norm() <= 1e-14 * scale) break;
    Vec d = -B * g;
    if (g.dot(d) >= 0) {
      B.setIdentity();
      d = -g;
    }
    double t = 1.0;
    bool ok = false;
    Vec en, gn;
    double vn = 0;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      en = eta + t * d;
      if (!admissible(en)) continue;
      vn = phi(en);
      if (vn <= val + 1e-4 * t * g.dot(d)) {
        ok = true;
        break;
      }
    }
    if (!ok) break;
    gn = dphi(en);
    const Vec s = en - eta, yv = gn - g;
    const double sy = s.dot(yv);
    if (sy > 1e-300) {
      const Mat I = Mat::Identity(s.size(), s.size());
      const double rho = 1.0 / sy;
      B = (I - rho * s * yv.transpose()) * B * (I - rho * yv * s.transpose()) + rho * s * s.transpose();
    }
    eta = en;
    val = vn;
    g = gn;
  }
  r.point = psi->conjugate_gradient(eta);
  const Vec stat = f->gradient(r.point) + lambda * psi->hessian(r.point) * (r.point - y);
  r.residual = dual_norm(psi->space(), stat) / std::max(1.0, dual_norm(psi->space(), f->gradient(r.point)));
  r.converged = r.residual <= tol;
  return r;
}

OperatorResult right_prox(const PotentialPtr& psi, const ConvexSet& Khat, double lambda, const Vec& y, double tol) {
  check_lambda(lambda);
  ProjectionOptions opt;
  opt.tol = tol;
  const ProjectionResult p = right_project(psi, Khat, y, opt);
  return {p.point, p.variational_residual, p.iterations, p.converged};
}

OperatorResult left_resolvent(const PotentialPtr& psi, const MonotoneMap& T, double lambda, const Vec& x, double tol) {
  check_lambda(lambda);
  if (!psi) throw ValidationError("left_resolvent: null potential");
  if (T.dim() != psi->dim() || x.size() != psi->dim()) throw ShapeError("left_resolvent: dimension mismatch");
  if (!psi->in_interior(x)) throw PreconditionError("left_resolvent: x must lie in the domain interior");
  tol = resolve_tol(psi, tol);
  const Vec theta = psi->gradient(x);
  OperatorResult r;

  if (T.kind() == MonotoneMap::Kind::subdifferential_of_indicator) {
    ProjectionOptions opt;
    opt.tol = tol;
    const ProjectionResult p = left_project(psi, T.set(), x, opt);
    return {p.point, p.variational_residual, p.iterations, p.converged};
  }

  NewtonOut n;
  if (T.kind() == MonotoneMap::Kind::gradient_of) {
    const PotentialPtr& f = T.potential();
    auto value = [&](const Vec& z) { return psi->value(z) + lambda * f->value(z) - z.dot(theta); };
    auto grad = [&](const Vec& z) { return Vec(psi->gradient(z) + lambda * f->gradient(z) - theta); };
    auto hess = [&](const Vec& z) { return Mat(psi->hessian(z) + lambda * f->hessian(z)); };
    auto interior = [&](const Vec& z) { return psi->in_interior(z) && f->in_interior(z); };
    n = newton_minimize(value, grad, hess, interior, prox_start(*psi, *f, x), 500);
  } else {
    auto R = [&](const Vec& z) { return Vec(psi->gradient(z) + lambda * T(z) - theta); };
    auto J = [&](const Vec& z) { return Mat(psi->hessian(z) + lambda * T.jacobian(z)); };
    auto interior = [&](const Vec& z) { return psi->in_interior(z); };
    n = newton_root(R, J, interior, x, 500);
  }
  r.point = n.x;
  r.iterations = n.iterations;
  const Vec res = psi->gradient(n.x) + lambda * T(n.x) - theta;
  r.residual = dual_norm(psi->space(), res) / std::max(1.0, dual_norm(psi->space(), theta));
  r.converged = r.residual <= tol;
  return r;
}

OperatorResult right_resolvent(const PotentialPtr& psi, const MonotoneMap& T, double lambda, const Vec& xi,
                               double tol) {
  check_lambda(lambda);
  if (!psi) throw ValidationError("right_resolvent: null potential");
  if (!psi->has_conjugate()) throw UnsupportedOperation("right_resolvent: potential has no conjugate");
  if (!psi->conjugate_in_interior(xi)) throw PreconditionError("right_resolvent: point outside the conjugate interior");
  tol = resolve_tol(psi, tol);
  OperatorResult l = left_resolvent(psi, T, lambda, psi->conjugate_gradient(xi), tol);
  OperatorResult r = l;
  r.point = psi->gradient(l.point);
  if (T.single_valued()) {
    const Vec res = r.point + lambda * T(psi->conjugate_gradient(r.point)) - xi;
    r.residual = res.norm() / std::max(1.0, xi.norm());
    r.converged = r.residual <= tol;
  }
  return r;
}

std::string IterationTrace::csv() const {
  std::ostringstream os;
  os << std::setprecision(12);
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  os << "step";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i;
  os << ",divergence\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < d; ++i) os << "," << points[k][i];
    os << ",";
    if (k < divergence_to_target.size()) os << divergence_to_target[k];
    os << "\n";
  }
  return os.str();
}

namespace {

bool is_euclidean_identity_gradient(const Potential& psi) {
  Rng rng(11);
  for (int k = 0; k < 3; ++k) {
    const Vec x = rng.normal_vec(psi.dim());
    if (!psi.in_interior(x)) return false;
    if ((psi.gradient(x) - x).norm() > 1e-12 * (1.0 + x.norm())) return false;
  }
  return true;
}

}  // namespace

IterationTrace cyclic_project(const PotentialPtr& psi, const std::vector<ConvexSet>& sets, const Vec& y,
                              CyclicMode mode, int max_sweeps, double tol, const std::optional<Vec>& target) {
  if (!psi) throw ValidationError("cyclic_project: null potential");
  if (sets.empty()) throw ValidationError("cyclic_project: need at least one set");
  if (max_sweeps < 1) throw ValidationError("cyclic_project: sweeps must be positive");
  tol = resolve_tol(psi, tol);
  for (const auto& K : sets)
    if (K.dim != psi->dim()) throw ShapeError("cyclic_project: set dimension mismatch");
  if (mode == CyclicMode::dykstra_hilbert && !is_euclidean_identity_gradient(*psi))
    throw PreconditionError("cyclic_project: dykstra_hilbert requires the Hilbert gauge");

  IterationTrace tr;
  Vec x = y;
  auto record = [&](const Vec& p) {
    tr.points.push_back(p);
    if (target) tr.divergence_to_target.push_back(psi->divergence(*target, p));
  };
  record(x);
  std::vector<Vec> corr(sets.size(), Vec::Zero(y.size()));
  ProjectionOptions opt;
  opt.tol = 1e-2 * tol;
  opt.probes = 8;
  tr.stop_reason = "sweep budget exhausted";
  for (tr.sweeps = 1; tr.sweeps <= max_sweeps; ++tr.sweeps) {
    const Vec prev = x;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (mode == CyclicMode::naive_cyclic) {
        x = left_project(psi, sets[i], x, opt).point;
      } else {
        const Vec t = x + corr[i];
        x = euclidean_project_coords(sets[i], t);
        corr[i] = t - x;
      }
    }
    record(x);
    const double step = (x - prev).norm();
    tr.step_norms.push_back(step);
    double viol = 0.0;
    for (const auto& K : sets) viol = std::max(viol, violation(K, x));
    if (step <= 1e-2 * tol * (1.0 + x.norm()) && viol <= tol) {
      tr.converged = true;
      tr.stop_reason = "converged";
      break;
    }
  }
  tr.sweeps = std::min(tr.sweeps, max_sweeps);
  return tr;
}

QuasinonexpansiveReport certify_quasinonexpansive(const PotentialPtr& psi, const std::function<Vec(const Vec&)>& T,
                                                   const std::vector<Vec>& fixed_points,
                                                   const std::vector<Vec>& samples) {
  QuasinonexpansiveReport rep;
  auto D = [&](const Vec& a, const Vec& b) { return psi->divergence(a, b); };
  auto rel = [](double lhs, double rhs) { return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}); };
  std::vector<Vec> images;
  images.reserve(samples.size());
  for (const Vec& x : samples) images.push_back(T(x));
  rep.left_sq = rep.right_sq = rep.left_firm = -kInf;
  for (const Vec& p : fixed_points) {
    rep.fixed_point_error = std::max(rep.fixed_point_error, (T(p) - p).norm() / std::max(1.0, p.norm()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Vec& x = samples[i];
      const Vec& tx = images[i];
      rep.left_sq = std::max(rep.left_sq, rel(D(p, tx), D(p, x)));
      rep.right_sq = std::max(rep.right_sq, rel(D(tx, p), D(x, p)));
      ++rep.pairs;
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const Vec &x = samples[i], &y = samples[j], &tx = images[i], &ty = images[j];
      const double lhs = D(tx, ty) + D(ty, tx) + D(tx, x) + D(ty, y);
      const double rhs = D(tx, y) + D(ty, x);
      rep.left_firm = std::max(rep.left_firm, rel(lhs, rhs));
    }
  }
  if (!std::isfinite(rep.left_sq)) rep.left_sq = 0.0;
  if (!std::isfinite(rep.right_sq)) rep.right_sq = 0.0;
  if (!std::isfinite(rep.left_firm)) rep.left_firm = 0.0;
  return rep;
}

}  // namespace bregproj
