#include "bregproj/projections.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "bregproj/error.hpp"

namespace bregproj {

double default_tolerance(const SpaceDescriptor& space) { return space.is_matrix() ? 1e-7 : 1e-8; }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Brent's method on a bracket with f(a) and f(b) of opposite signs.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, int& iters) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa, d = b - a, e = d;
  for (iters = 0; iters < 300; ++iters) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 1e-300;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

// Root of a nondecreasing g on the admissible interval around 0, searching in
// direction `dir`. Returns nullopt when no sign change is reachable.
template <class G, class Adm>
std::optional<double> monotone_root(G&& g, Adm&& admissible, double g0, double step, int& iters) {
  if (g0 == 0.0) return 0.0;
  const double dir = g0 > 0 ? -1.0 : 1.0;
  double ok = 0.0, gok = g0;
  double s = step;
  iters = 0;
  for (int k = 0; k < 400; ++k, ++iters) {
    const double mu = ok + dir * s;
    if (!admissible(mu)) {
      // walk toward the boundary of the admissible interval
      double bad = mu;
      for (int j = 0; j < 200; ++j, ++iters) {
        const double mid = 0.5 * (ok + bad);
        if (mid == ok || mid == bad) return std::nullopt;
        if (!admissible(mid)) {
          bad = mid;
          continue;
        }
        const double gm = g(mid);
        if ((gm > 0) != (gok > 0) || gm == 0.0) {
          int it = 0;
          const double r = brent(g, ok, mid, gok, gm, it);
          iters += it;
          return r;
        }
        ok = mid;
        gok = gm;
      }
      return std::nullopt;
    }
    const double gm = g(mu);
    if ((gm > 0) != (gok > 0) || gm == 0.0) {
      int it = 0;
      const double r = brent(g, ok, mu, gok, gm, it);
      iters += it;
      return r;
    }
    ok = mu;
    gok = gm;
    s *= 2.0;
    if (std::abs(ok) > 1e300) break;
  }
  return std::nullopt;
}

struct DualSolve {
  Vec point;
  Vec eta;
  Vec mu;
  int iterations = 0;
  bool converged = false;
};

DualSolve hyperplane_dual(const Potential& psi, const Vec& a, double b, const Vec& theta) {
  auto admissible = [&](double mu) { return psi.conjugate_in_interior(theta + mu * a); };
  auto g = [&](double mu) { return a.dot(psi.conjugate_gradient(theta + mu * a)) - b; };
  const double g0 = g(0.0);
  int iters = 0;
  const double step = (1.0 + theta.norm()) / std::max(a.norm(), 1e-300) * 1e-2;
  auto mu = monotone_root(g, admissible, g0, step, iters);
  if (!mu) throw InfeasibleError("left_project: hyperplane does not meet the domain interior");
  DualSolve r;
  r.mu = Vec::Constant(1, *mu);
  r.eta = theta + *mu * a;
  r.point = psi.conjugate_gradient(r.eta);
  r.iterations = iters;
  r.converged = true;
  return r;
}

// Greedy selection of linearly independent rows.
std::vector<int> independent_rows(const Mat& A) {
  std::vector<int> keep;
  Mat Q(A.cols(), 0);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Vec v = A.row(i).transpose();
    const double n0 = v.norm();
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      if (Q.cols() > 0) v -= Q * (Q.transpose() * v);
    if (v.norm() > 1e-10 * n0) {
      Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
      Q.col(Q.cols() - 1) = v / v.norm();
      keep.push_back(static_cast<int>(i));
    }
  }
  return keep;
}

DualSolve affine_dual(const Potential& psi, const Mat& Afull, const Vec& bfull, const Vec& theta, int max_iter) {
  const std::vector<int> keep = independent_rows(Afull);
  Mat A(keep.size(), Afull.cols());
  Vec b(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    A.row(k) = Afull.row(keep[k]);
    b[k] = bfull[keep[k]];
  }
  const Eigen::Index m = A.rows();
  DualSolve r;
  Vec mu = Vec::Zero(m);
  auto h = [&](const Vec& u) { return psi.conjugate_value(theta + A.transpose() * u) - b.dot(u); };
  Vec eta = theta;
  Vec x = psi.conjugate_gradient(eta);
  Vec res = A * x - b;
  double hv = h(mu);
  const double scale = 1.0 + b.norm() + A.norm() * (1.0 + x.norm());
  int stall = 0;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    if (res.norm() <= 1e-14 * scale) break;
    Mat J = A * psi.conjugate_hessian(eta) * A.transpose();
    J += (1e-15 * (1.0 + J.trace())) * Mat::Identity(m, m);
    Vec dir = -J.ldlt().solve(res);
    if (!dir.allFinite() || res.dot(dir) >= 0) dir = -res;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 80; ++k, t *= 0.5) {
      const Vec trial = mu + t * dir;
      const Vec eta_t = theta + A.transpose() * trial;
      if (!psi.conjugate_in_interior(eta_t)) continue;
      const double ht = h(trial);
      const Vec xt = psi.conjugate_gradient(eta_t);
      const Vec rt = A * xt - b;
      if (ht <= hv + 1e-4 * t * res.dot(dir) || rt.norm() < 0.9 * res.norm()) {
        const bool progress = rt.norm() < res.norm();
        mu = trial;
        eta = eta_t;
        x = xt;
        res = rt;
        hv = ht;
        accepted = true;
        stall = progress ? 0 : stall + 1;
        break;
      }
    }
    if (!accepted || stall > 5) break;
    if (mu.norm() > 1e250) throw InfeasibleError("left_project: affine set does not meet the domain interior");
  }
  r.point = x;
  r.eta = eta;
  r.mu = Vec::Zero(Afull.rows());
  for (std::size_t k = 0; k < keep.size(); ++k) r.mu[keep[k]] = mu[k];
  const Vec full_res = Afull * x - bfull;
  r.converged = full_res.norm() <= 1e-9 * (1.0 + bfull.norm() + Afull.norm() * (1.0 + x.norm()));
  if (!r.converged && mu.norm() > 1e8 * (1.0 + theta.norm()))
    throw InfeasibleError("left_project: affine set does not meet the domain interior");
  return r;
}

double stationarity(const ConvexSet& K, const Vec& x, const Vec& g) {
  return (euclidean_project_coords(K, x - g) - x).norm();
}

struct FaceSolve {
  Vec x;
  Vec nu;
  bool ok = false;
  int iterations = 0;
};

// Newton on the KKT system of min f s.t. A x = b, started from an interior point.
FaceSolve face_newton(const SmoothProblem& prob, const Mat& A, const Vec& b, Vec x, int max_iter) {
  FaceSolve out;
  const Eigen::Index d = x.size(), m = A.rows();
  Vec nu = Vec::Zero(m);
  if (m > 0) {
    const Vec g0 = prob.gradient(x);
    nu = -(A * A.transpose()).ldlt().solve(A * g0);
  }
  auto residual = [&](const Vec& xx, const Vec& nn, Vec& g) {
    g = prob.gradient(xx);
    Vec rd = g + A.transpose() * nn;
    Vec rp = A * xx - b;
    return std::sqrt(rd.squaredNorm() + rp.squaredNorm());
  };
  Vec g;
  double res = residual(x, nu, g);
  const double scale = 1.0 + g.norm() + (A.size() ? A.norm() * (1.0 + x.norm()) + b.norm() : 0.0);
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    if (res <= 1e-13 * scale) break;
    Mat H = prob.hessian(x);
    if (!H.allFinite()) return out;
    H += (1e-14 * (1.0 + H.diagonal().cwiseAbs().maxCoeff())) * Mat::Identity(d, d);
    Mat KKT = Mat::Zero(d + m, d + m);
    KKT.topLeftCorner(d, d) = H;
    KKT.topRightCorner(d, m) = A.transpose();
    KKT.bottomLeftCorner(m, d) = A;
    Vec rhs(d + m);
    rhs.head(d) = -(g + A.transpose() * nu);
    rhs.tail(m) = -(A * x - b);
    Vec step = KKT.partialPivLu().solve(rhs);
    if (!step.allFinite()) return out;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const Vec xt = x + t * step.head(d);
      if (!prob.interior(xt)) continue;
      const Vec nt = nu + t * step.tail(m);
      Vec gt;
      const double rt = residual(xt, nt, gt);
      if (std::isfinite(rt) && rt <= (1.0 - 1e-4 * t) * res) {
        x = xt;
        nu = nt;
        g = gt;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.x = x;
  out.nu = nu;
  out.ok = res <= 1e-10 * scale;
  return out;
}

struct PolishResult {
  Vec x;
  Vec multipliers;
  bool ok = false;
  int iterations = 0;
};

PolishResult polyhedral_polish(const SmoothProblem& prob, const std::vector<LinearRow>& rows, const Vec& x0) {
  PolishResult out;
  const std::size_t R = rows.size();
  auto slack = [&](std::size_t i, const Vec& x) { return rows[i].b - rows[i].a.dot(x); };
  auto feas_tol = [&](std::size_t i, const Vec& x) {
    return 1e-11 * (1.0 + std::abs(rows[i].b) + rows[i].a.norm() * x.norm());
  };
  std::vector<char> active(R, 0);
  for (std::size_t i = 0; i < R; ++i)
    active[i] = rows[i].equality || slack(i, x0) <= 1e-8 * (1.0 + std::abs(rows[i].b) + rows[i].a.norm() * x0.norm());

  for (int round = 0; round < static_cast<int>(2 * R + 6); ++round) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < R; ++i)
      if (active[i]) idx.push_back(static_cast<int>(i));
    Mat Aw(idx.size(), x0.size());
    Vec bw(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Aw.row(k) = rows[idx[k]].a.transpose();
      bw[k] = rows[idx[k]].b;
    }
    const std::vector<int> keep = independent_rows(Aw);
    Mat A(keep.size(), x0.size());
    Vec b(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
      A.row(k) = Aw.row(keep[k]);
      b[k] = bw[keep[k]];
    }
    FaceSolve fs = face_newton(prob, A, b, x0, 100);
    out.iterations += fs.iterations;
    if (!fs.ok) {
      // the face may leave the domain interior; retreat to the equalities
      bool dropped = false;
      for (std::size_t i = 0; i < R; ++i)
        if (active[i] && !rows[i].equality) {
          active[i] = 0;
          dropped = true;
        }
      if (!dropped) return out;
      continue;
    }
    Vec nu = Vec::Zero(R);
    for (std::size_t k = 0; k < keep.size(); ++k) nu[idx[keep[k]]] = fs.nu[k];
    // dependent active rows take no multiplier; the sign test then uses the kept ones

    int worst_viol = -1;
    double wv = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
      if (active[i]) continue;
      const double v = -slack(i, fs.x) / (1.0 + rows[i].a.norm());
      if (v > feas_tol(i, fs.x) && v > wv) {
        wv = v;
        worst_viol = static_cast<int>(i);
      }
    }
    if (worst_viol >= 0) {
      active[worst_viol] = 1;
      continue;
    }
    const double gscale = 1.0 + prob.gradient(fs.x).norm();
    int worst_sign = -1;
    double ws = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
      if (!active[i] || rows[i].equality) continue;
      if (nu[i] < -1e-10 * gscale && nu[i] < ws) {
        ws = nu[i];
        worst_sign = static_cast<int>(i);
      }
    }
    if (worst_sign >= 0) {
      active[worst_sign] = 0;
      continue;
    }
    out.x = fs.x;
    out.multipliers = nu;
    out.ok = true;
    return out;
  }
  return out;
}

// KKT Newton for min f over {||x - c|| <= r}.
PolishResult ball_polish(const SmoothProblem& prob, const Vec& c, double rad, const Vec& x0) {
  PolishResult out;
  if ((x0 - c).norm() < rad * (1.0 - 1e-6)) {
    FaceSolve fs = face_newton(prob, Mat(0, x0.size()), Vec(0), x0, 100);
    out.iterations = fs.iterations;
    if (fs.ok && (fs.x - c).norm() <= rad * (1.0 + 1e-12)) {
      out.x = fs.x;
      out.multipliers = Vec::Zero(1);
      out.ok = true;
    }
    return out;
  }
  const Eigen::Index d = x0.size();
  Vec x = x0;
  Vec g = prob.gradient(x);
  double nu = std::max(0.0, -g.dot(x - c) / (rad * rad));
  auto residual = [&](const Vec& xx, double nn, Vec& gg) {
    gg = prob.gradient(xx);
    const Vec rd = gg + nn * (xx - c);
    const double rp = 0.5 * ((xx - c).squaredNorm() - rad * rad);
    return std::sqrt(rd.squaredNorm() + rp * rp);
  };
  double res = residual(x, nu, g);
  const double scale = 1.0 + g.norm() + rad * rad;
  for (out.iterations = 0; out.iterations < 100; ++out.iterations) {
    if (res <= 1e-13 * scale) break;
    Mat KKT = Mat::Zero(d + 1, d + 1);
    KKT.topLeftCorner(d, d) = prob.hessian(x) + nu * Mat::Identity(d, d);
    KKT.topRightCorner(d, 1) = x - c;
    KKT.bottomLeftCorner(1, d) = (x - c).transpose();
    Vec rhs(d + 1);
    rhs.head(d) = -(g + nu * (x - c));
    rhs[d] = -0.5 * ((x - c).squaredNorm() - rad * rad);
    const Vec step = KKT.partialPivLu().solve(rhs);
    if (!step.allFinite()) return out;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const Vec xt = x + t * step.head(d);
      if (!prob.interior(xt)) continue;
      Vec gt;
      const double rt = residual(xt, nu + t * step[d], gt);
      if (std::isfinite(rt) && rt <= (1.0 - 1e-4 * t) * res) {
        x = xt;
        nu += t * step[d];
        g = gt;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (res <= 1e-10 * scale && nu >= -1e-10 * (1.0 + g.norm())) {
    out.x = x;
    out.multipliers = Vec::Constant(1, std::max(nu, 0.0));
    out.ok = true;
  }
  return out;
}

}  // namespace

SolveResult minimize_over_set(const SmoothProblem& prob, const ConvexSet& K, const Vec& x0, double tol,
                              int max_iterations) {
  if (!prob.interior(x0)) throw PreconditionError("minimize_over_set: start point is not interior");
  SolveResult out;
  Vec x = x0;
  double f = prob.value(x);
  Vec g = prob.gradient(x);
  std::deque<double> hist{f};
  double alpha = 1.0 / std::max(1e-12, stationarity(K, x, g));
  alpha = std::clamp(alpha, 1e-10, 1e10);

  const auto rows = K.linear_rows();
  const bool can_polish = static_cast<bool>(prob.hessian) && (rows || K.kind == SetKind::norm_ball);
  auto try_polish = [&](const Vec& at) -> bool {
    if (!can_polish) return false;
    PolishResult pr = rows ? polyhedral_polish(prob, *rows, at) : ball_polish(prob, K.center, K.radius, at);
    out.iterations += pr.iterations;
    if (!pr.ok) return false;
    out.x = pr.x;
    out.multipliers = pr.multipliers;
    out.stationarity = stationarity(K, pr.x, prob.gradient(pr.x));
    out.converged = out.stationarity <= tol * (1.0 + pr.x.norm());
    out.method = "spg+newton";
    return out.converged;
  };

  double next_polish = 1e-4;
  int polish_attempts = 0;
  for (int it = 0; it < max_iterations; ++it) {
    ++out.iterations;
    const double st = stationarity(K, x, g);
    const double sc = 1.0 + x.norm();
    if (can_polish && polish_attempts < 6 && (st <= next_polish * sc || it % 2000 == 1999)) {
      ++polish_attempts;
      next_polish *= 1e-2;
      if (try_polish(x)) return out;
    }
    if (st <= 1e-3 * tol * sc) break;
    const Vec d = euclidean_project_coords(K, x - alpha * g) - x;
    const double gd = g.dot(d);
    const double fmax = *std::max_element(hist.begin(), hist.end());
    double lam = 1.0;
    Vec xn;
    double fn = kInf;
    bool ok = false;
    for (int k = 0; k < 80; ++k, lam *= 0.5) {
      xn = x + lam * d;
      if (!prob.interior(xn)) continue;
      fn = prob.value(xn);
      if (fn <= fmax + 1e-4 * lam * gd) {
        ok = true;
        break;
      }
    }
    if (!ok) break;
    const Vec gn = prob.gradient(xn);
    const Vec s = xn - x, yv = gn - g;
    const double sy = s.dot(yv);
    alpha = sy > 0 ? std::clamp(s.squaredNorm() / sy, 1e-12, 1e12) : 1e12;
    x = xn;
    g = gn;
    f = fn;
    hist.push_back(f);
    if (hist.size() > 10) hist.pop_front();
  }
  if (try_polish(x)) return out;
  out.x = x;
  out.stationarity = stationarity(K, x, g);
  out.converged = out.stationarity <= tol * (1.0 + x.norm());
  out.multipliers = Vec();
  out.method = "spg";
  return out;
}

double variational_residual(const ConvexSet& K, const Vec& z, const Vec& g, int probes, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  const double gn = g.norm();
  const double base = 1.0 + z.norm();
  for (int i = 0; i < probes; ++i) {
    const double spread = base * (i % 3 == 0 ? 0.1 : (i % 3 == 1 ? 1.0 : 3.0));
    const Vec u = sample_member(K, z, spread, rng);
    const double v = (u - z).dot(g) / (1.0 + (u - z).norm() * gn);
    worst = std::max(worst, -v);
  }
  return worst;
}

namespace {

Vec start_point(const Potential& psi, const ConvexSet& K, const Vec& y) {
  std::vector<Vec> anchors;
  if (K.witness) anchors.push_back(K.witness->point);
  anchors.push_back(default_witness(K).point);
  anchors.push_back(euclidean_project_coords(K, psi.interior_point()));
  const Vec py = euclidean_project_coords(K, y);
  if (psi.in_interior(py)) return py;
  for (const Vec& w0 : anchors) {
    const Vec w = euclidean_project_coords(K, w0);
    if (!psi.in_interior(w)) continue;
    for (double tau = 1e-6; tau < 1.0; tau *= 4.0) {
      const Vec c = (1.0 - tau) * py + tau * w;
      if (psi.in_interior(c)) return c;
    }
    return w;
  }
  throw PreconditionError("left_project: no witness of K inside the domain interior");
}

ProjectionResult finish(const Potential& psi, const ConvexSet& K, const Vec& y, const Vec& theta, const Vec& z,
                        const ProjectionOptions& opt) {
  ProjectionResult r;
  r.point = z;
  r.dual_point = psi.gradient(z);
  r.objective = psi.divergence(z, y);
  r.variational_residual = variational_residual(K, z, r.dual_point - theta, opt.probes, opt.seed);
  return r;
}

ProjectionResult left_project_impl(const PotentialPtr& psi, const ConvexSet& K, const Vec& y,
                                   const ProjectionOptions& opt) {
  if (!psi) throw ValidationError("left_project: null potential");
  if (y.size() != psi->dim() || K.dim != psi->dim()) throw ShapeError("left_project: dimension mismatch");
  K.validate();
  if (!psi->in_interior(y)) throw PreconditionError("left_project: y must lie in the domain interior");
  const double tol = opt.tol > 0 ? opt.tol : default_tolerance(psi->space());
  const Vec theta = psi->gradient(y);
  const double member_tol = 1e-14 * (1.0 + y.norm());

  auto done = [&](const Vec& z, Vec mult, int iters, bool solver_ok, const std::string& method) {
    ProjectionResult r = finish(*psi, K, y, theta, z, opt);
    r.multipliers = std::move(mult);
    r.iterations = iters;
    r.method = method;
    const bool member = violation(K, z) <= tol * (1.0 + z.norm());
    r.converged = solver_ok && member && r.variational_residual <= tol;
    return r;
  };

  if (violation(K, y) <= member_tol) return done(y, Vec(), 0, true, "member");

  if (K.kind == SetKind::hyperplane || K.kind == SetKind::halfspace) {
    DualSolve s = hyperplane_dual(*psi, K.a, K.b, theta);
    return done(s.point, s.mu, s.iterations, s.converged, "dual-root");
  }
  if (K.is_affine()) {
    auto rows = K.linear_rows();
    Mat A(rows->size(), K.dim);
    Vec b(rows->size());
    for (std::size_t i = 0; i < rows->size(); ++i) {
      A.row(i) = (*rows)[i].a.transpose();
      b[i] = (*rows)[i].b;
    }
    DualSolve s = affine_dual(*psi, A, b, theta, 500);
    return done(s.point, s.mu, s.iterations, s.converged, "dual-newton");
  }
  if (K.kind == SetKind::psd_trace_slice) {
    if (PotentialPtr inner = psi->spectral_inner()) {
      const CMat Y = unflatten_hermitian(y, K.matrix_n);
      const EigenSorted e = eigen_sorted(Y);
      ProjectionOptions o = opt;
      o.tol = tol;
      ProjectionResult vr = left_project_impl(inner, ConvexSet::simplex(K.matrix_n, K.total), e.values, o);
      const CMat Z = e.basis * vr.point.asDiagonal() * e.basis.adjoint();
      return done(flatten_hermitian(Z), vr.multipliers, vr.iterations, vr.converged, "spectral-" + vr.method);
    }
  }

  SmoothProblem prob;
  prob.value = [&](const Vec& x) { return psi->value(x) - x.dot(theta); };
  prob.gradient = [&](const Vec& x) { Vec g = psi->gradient(x); return Vec(g - theta); };
  prob.hessian = [&](const Vec& x) { return psi->hessian(x); };
  prob.interior = [&](const Vec& x) { return psi->in_interior(x); };
  const Vec x0 = start_point(*psi, K, y);
  SolveResult s = minimize_over_set(prob, K, x0, tol, opt.max_iterations);
  return done(s.x, s.multipliers, s.iterations, s.converged, s.method);
}

}  // namespace

ProjectionResult left_project(const PotentialPtr& psi, const ConvexSet& K, const Vec& y, ProjectionOptions opt) {
  if (K.coordinates != Coordinates::primal) throw ValidationError("left_project: set must use primal coordinates");
  return left_project_impl(psi, K, y, opt);
}

SpacePoint left_project(const PotentialPtr& psi, const ConvexSet& K, const SpacePoint& y) {
  return SpacePoint(psi->space(), left_project(psi, K, y.coords()).point);
}

ProjectionResult right_project(const PotentialPtr& psi, const ConvexSet& Khat, const Vec& y, ProjectionOptions opt) {
  if (!psi) throw ValidationError("right_project: null potential");
  if (Khat.coordinates != Coordinates::dual)
    throw ValidationError("right_project: set must use dual coordinates");
  if (!psi->has_conjugate()) throw UnsupportedOperation("right_project: potential has no conjugate");
  if (!psi->in_interior(y)) throw PreconditionError("right_project: y must lie in the domain interior");
  const PotentialPtr cv = conjugate_view(psi);
  const Vec theta = psi->gradient(y);
  ProjectionResult d = left_project_impl(cv, Khat, theta, opt);
  ProjectionResult r = d;
  r.point = psi->conjugate_gradient(d.point);
  r.dual_point = d.point;
  r.objective = psi->divergence(y, r.point);
  return r;
}

PythagoreanReport verify_pythagorean(const PotentialPtr& psi, const ConvexSet& K, const Vec& y, Side side, int probes,
                                     std::uint64_t seed, double tol) {
  if (tol <= 0) tol = default_tolerance(psi->space());
  PythagoreanReport rep;
  rep.side = side;
  ProjectionOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  Rng rng(Rng::derive(seed, 1));
  double mn = kInf, mx = 0.0;
  if (side == Side::left) {
    const ProjectionResult pr = left_project(psi, K, y, opt);
    const Vec& z = pr.point;
    rep.projection = z;
    rep.converged = pr.converged;
    rep.variational_residual = pr.variational_residual;
    rep.equality_expected = K.is_affine();
    const double dzy = psi->divergence(z, y);
    const double base = 1.0 + (y - z).norm();
    for (int tries = 0; static_cast<int>(rep.residuals.size()) < probes && tries < 20 * probes; ++tries) {
      const double spread = base * (tries % 3 == 0 ? 0.1 : (tries % 3 == 1 ? 1.0 : 3.0));
      const Vec x = sample_member(K, z, spread, rng);
      const double dxy = psi->divergence(x, y), dxz = psi->divergence(x, z);
      if (!std::isfinite(dxy) || !std::isfinite(dxz)) continue;
      const double rres = (dxy - dxz - dzy) / std::max(1.0, std::abs(dxy));
      rep.residuals.push_back(rres);
    }
  } else {
    const ProjectionResult pr = right_project(psi, K, y, opt);
    const Vec& z = pr.point;
    rep.projection = z;
    rep.converged = pr.converged;
    rep.variational_residual = pr.variational_residual;
    rep.equality_expected = K.is_affine();
    const double dyz = psi->divergence(y, z);
    const double base = 1.0 + (pr.dual_point - psi->gradient(y)).norm();
    for (int tries = 0; static_cast<int>(rep.residuals.size()) < probes && tries < 20 * probes; ++tries) {
      const double spread = base * (tries % 3 == 0 ? 0.1 : (tries % 3 == 1 ? 1.0 : 3.0));
      const Vec k = sample_member(K, pr.dual_point, spread, rng);
      if (!psi->conjugate_in_interior(k)) continue;
      const Vec c = psi->conjugate_gradient(k);
      const double dyc = psi->divergence(y, c), dzc = psi->divergence(z, c);
      if (!std::isfinite(dyc) || !std::isfinite(dzc)) continue;
      rep.residuals.push_back((dyc - dyz - dzc) / std::max(1.0, std::abs(dyc)));
    }
  }
  for (double v : rep.residuals) {
    mn = std::min(mn, v);
    mx = std::max(mx, std::abs(v));
  }
  rep.min_residual = rep.residuals.empty() ? 0.0 : mn;
  rep.max_abs_residual = mx;
  rep.passed = rep.min_residual >= -tol && (!rep.equality_expected || rep.max_abs_residual <= tol);
  return rep;
}

AlberReport alber_decompose(const SpaceDescriptor& space, const Gauge& gauge, const ConvexSet& K, const Vec& x,
                            double tol) {
  if (K.kind != SetKind::cone) throw UnsupportedOperation("alber_decompose: K must be a cone or a subspace");
  if (tol <= 0) tol = default_tolerance(space);
  const PotentialPtr psi = make_gauge_potential(space, gauge);
  ProjectionOptions opt;
  opt.tol = tol;
  const ProjectionResult lp = left_project(psi, K, x, opt);
  const Vec xi = psi->gradient(x);
  const ConvexSet Kp = polar_cone(K);

  SmoothProblem prob;
  prob.value = [&](const Vec& z) { return psi->conjugate_value(xi - z); };
  prob.gradient = [&](const Vec& z) { Vec g = psi->conjugate_gradient(xi - z); return Vec(-g); };
  prob.hessian = [&](const Vec& z) { return psi->conjugate_hessian(xi - z); };
  prob.interior = [&](const Vec& z) { return psi->conjugate_in_interior(xi - z); };
  const SolveResult ph = minimize_over_set(prob, Kp, euclidean_project_coords(Kp, xi), tol, opt.max_iterations);

  AlberReport r;
  r.left_part = lp.point;
  r.dual_part = ph.x;
  r.converged = lp.converged && ph.converged;
  const Vec rec = psi->conjugate_gradient(ph.x) + lp.point;
  r.reconstruction_residual = (x - rec).norm() / std::max(1.0, x.norm());
  const Vec drec = ph.x + psi->gradient(lp.point);
  r.dual_reconstruction_residual = (xi - drec).norm() / std::max(1.0, xi.norm());
  r.pairing_residual = std::abs(lp.point.dot(ph.x)) / std::max(1.0, lp.point.norm() * ph.x.norm());
  return r;
}

}  // namespace bregproj
