#include "bregproj/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bregproj/error.hpp"

namespace bregproj {

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("fit_power_law: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw ValidationError("fit_power_law: need two positive points");
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw ValidationError("fit_power_law: abscissae coincide");
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / den;
  f.constant = std::exp((sy - f.exponent * sx) / n);
  return f;
}

double gradient_check(const Potential& psi, const std::vector<Vec>& samples, std::vector<double> steps,
                      bool conjugate) {
  if (steps.empty()) steps = {1e-3, 1e-4, 1e-5, 1e-6};
  auto inside = [&](const Vec& p) { return conjugate ? psi.conjugate_in_interior(p) : psi.in_interior(p); };
  auto value = [&](const Vec& p) { return conjugate ? psi.conjugate_value(p) : psi.value(p); };
  auto grad = [&](const Vec& p) { return conjugate ? psi.conjugate_gradient(p) : psi.gradient(p); };
  double worst = 0.0;
  for (const Vec& x : samples) {
    if (!inside(x)) throw PreconditionError("gradient_check: sample outside the domain interior");
    const Vec g = grad(x);
    double best = kInf;
    for (double h0 : steps) {
      Vec fd(x.size());
      bool ok = true;
      for (Eigen::Index i = 0; i < x.size() && ok; ++i) {
        double h = h0 * std::max(1.0, std::abs(x[i]));
        Vec xp = x, xm = x;
        int tries = 0;
        for (; tries < 60; ++tries) {
          xp[i] = x[i] + h;
          xm[i] = x[i] - h;
          if (inside(xp) && inside(xm)) break;
          h *= 0.5;
        }
        if (tries == 60) ok = false;
        fd[i] = (value(xp) - value(xm)) / (2.0 * h);
      }
      if (!ok) continue;
      best = std::min(best, (fd - g).norm() / std::max(1.0, g.norm()));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

HolderReport estimate_holder(const HolderProblem& prob, int pairs, std::optional<double> predicted_t,
                             std::uint64_t seed, std::vector<double> decades) {
  if (decades.empty()) decades = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  if (decades.size() < 2) throw ValidationError("estimate_holder: need at least two distance decades");
  if (pairs < static_cast<int>(decades.size())) throw ValidationError("estimate_holder: too few pairs");
  std::sort(decades.begin(), decades.end(), std::greater<>());
  HolderReport rep;
  rep.seed = seed;
  rep.predicted = predicted_t;
  rep.decades = decades;
  const int per = pairs / static_cast<int>(decades.size());
  const double t = predicted_t.value_or(1.0);
  std::vector<std::vector<double>> dx(decades.size()), df(decades.size());
  rep.min_distance = kInf;
  for (std::size_t k = 0; k < decades.size(); ++k) {
    for (int i = 0; i < per; ++i) {
      Rng rng = Rng::derive(seed, k * 1000003ULL + static_cast<std::uint64_t>(i));
      auto [x, y] = prob.sampler(rng, decades[k]);
      const double a = prob.input_norm(x - y);
      if (!(a > 0) || !std::isfinite(a)) continue;
      const double b = prob.output_norm(prob.map(x) - prob.map(y));
      if (!std::isfinite(b)) throw ValidationError("estimate_holder: map produced a non-finite value");
      dx[k].push_back(a);
      df[k].push_back(b);
      rep.min_distance = std::min(rep.min_distance, a);
      rep.max_distance = std::max(rep.max_distance, a);
      ++rep.samples;
    }
  }
  rep.decade_ratio.assign(decades.size(), 0.0);
  for (std::size_t k = 0; k < decades.size(); ++k)
    for (std::size_t i = 0; i < dx[k].size(); ++i)
      rep.decade_ratio[k] = std::max(rep.decade_ratio[k], df[k][i] / std::pow(dx[k][i], t));
  rep.max_ratio = *std::max_element(rep.decade_ratio.begin(), rep.decade_ratio.end());
  if (!(rep.decade_ratio[0] > 0)) throw ValidationError("estimate_holder: degenerate sampler (no displacement)");
  rep.ratio_drift = 0.0;
  for (double r : rep.decade_ratio) rep.ratio_drift = std::max(rep.ratio_drift, r / rep.decade_ratio[0]);

  std::vector<double> fx, fy;
  for (std::size_t k = decades.size() - 2; k < decades.size(); ++k) {
    fx.insert(fx.end(), dx[k].begin(), dx[k].end());
    fy.insert(fy.end(), df[k].begin(), df[k].end());
  }
  const PowerFit fit = fit_power_law(fx, fy);
  rep.exponent = fit.exponent;
  rep.constant = fit.constant;
  return rep;
}

namespace {

double unit_norm_scale(const SpaceDescriptor& s, const Vec& v) {
  const double n = norm(s, v);
  if (!(n > 0)) throw ValidationError("moduli: zero vector");
  return n;
}

// 1 - ||(x+y)/2|| with y on the sphere at distance eps from x along d; NaN if unreachable.
double delta_at(const SpaceDescriptor& s, const Vec& x0, const Vec& d, double eps) {
  const Vec x = x0 / unit_norm_scale(s, x0);
  auto yof = [&](double t) {
    const Vec v = x + t * d;
    return Vec(v / norm(s, v));
  };
  auto dist = [&](double t) { return norm(s, x - yof(t)); };
  double lo = 0.0, hi = 1.0;
  int k = 0;
  while (dist(hi) < eps && k < 60) {
    lo = hi;
    hi *= 2.0;
    ++k;
  }
  if (dist(hi) < eps) return std::nan("");
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (dist(mid) < eps) lo = mid;
    else hi = mid;
  }
  const Vec y = yof(hi);
  return 1.0 - 0.5 * norm(s, x + y);
}

double rho_at(const SpaceDescriptor& s, const Vec& x0, const Vec& y0, double tau) {
  const Vec x = x0 / unit_norm_scale(s, x0);
  const Vec y = y0 / unit_norm_scale(s, y0);
  return 0.5 * (norm(s, x + tau * y) + norm(s, x - tau * y)) - 1.0;
}

struct Candidate {
  Vec a, b;
  double v;
};

// Pattern search on (a, b) improving `score` (minimizing when sign = 1).
Candidate polish(const std::function<double(const Vec&, const Vec&)>& score, Candidate c, double sign, Rng& rng) {
  double sigma = 0.1;
  int fails = 0;
  for (int it = 0; it < 300 && sigma > 1e-9; ++it) {
    const Vec a = c.a + sigma * rng.normal_vec(static_cast<int>(c.a.size()));
    const Vec b = c.b + sigma * rng.normal_vec(static_cast<int>(c.b.size()));
    const double v = score(a, b);
    if (std::isfinite(v) && sign * v < sign * c.v) {
      c = {a, b, v};
      fails = 0;
    } else if (++fails >= 12) {
      sigma *= 0.5;
      fails = 0;
    }
  }
  return c;
}

std::vector<std::pair<Vec, Vec>> structured_pairs(int d) {
  std::vector<std::pair<Vec, Vec>> out;
  const int m = std::min(d, 4);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Vec a = Vec::Zero(d), b = Vec::Zero(d);
      a[i] = 1.0;
      b[j] = 1.0;
      out.emplace_back(a, b);
      Vec c = Vec::Zero(d), e = Vec::Zero(d);
      c[i] = c[j] = 1.0;
      e[i] = 1.0;
      e[j] = -1.0;
      out.emplace_back(c, e);
    }
  return out;
}

Candidate search(const std::function<double(const Vec&, const Vec&)>& score, int d, int budget, double sign,
                 Rng& rng) {
  std::vector<Candidate> cands;
  for (auto& [a, b] : structured_pairs(d)) {
    const double v = score(a, b);
    if (std::isfinite(v)) cands.push_back({a, b, v});
  }
  for (int i = 0; i < budget; ++i) {
    const Vec a = rng.normal_vec(d), b = rng.normal_vec(d);
    const double v = score(a, b);
    if (std::isfinite(v)) cands.push_back({a, b, v});
  }
  if (cands.empty()) throw ValidationError("moduli: search produced no admissible candidate");
  std::sort(cands.begin(), cands.end(), [&](const Candidate& l, const Candidate& r) { return sign * l.v < sign * r.v; });
  Candidate best = cands.front();
  const std::size_t top = std::min<std::size_t>(4, cands.size());
  for (std::size_t i = 0; i < top; ++i) {
    Candidate c = polish(score, cands[i], sign, rng);
    if (sign * c.v < sign * best.v) best = c;
  }
  return best;
}

}  // namespace

ModulusReport convexity_smoothness_moduli(const SpaceDescriptor& space, std::vector<double> eps, int budget,
                                          std::uint64_t seed) {
  space.validate();
  if (eps.empty()) eps = {0.02, 0.04, 0.08, 0.16};
  for (double e : eps)
    if (!(e > 0 && e < 2)) throw ValidationError("moduli: eps must lie in (0,2)");
  if (budget < 1) throw ValidationError("moduli: budget must be positive");
  ModulusReport rep;
  rep.eps = eps;
  rep.seed = seed;
  rep.budget = budget;
  const int d = space.flat_dim();
  for (std::size_t k = 0; k < eps.size(); ++k) {
    Rng rng = Rng::derive(seed, 2 * k);
    const double e = eps[k];
    auto dscore = [&](const Vec& a, const Vec& b) {
      if (norm(space, a) == 0.0 || b.norm() == 0.0) return std::nan("");
      return delta_at(space, a, b, e);
    };
    rep.delta.push_back(search(dscore, d, budget, 1.0, rng).v);
    Rng rng2 = Rng::derive(seed, 2 * k + 1);
    auto rscore = [&](const Vec& a, const Vec& b) {
      if (norm(space, a) == 0.0 || norm(space, b) == 0.0) return std::nan("");
      return rho_at(space, a, b, e);
    };
    rep.rho.push_back(search(rscore, d, budget, -1.0, rng2).v);
  }
  rep.delta_fit = fit_power_law(rep.eps, rep.delta);
  rep.rho_fit = fit_power_law(rep.eps, rep.rho);
  return rep;
}

MonotonicityReport monotonicity_strength(const SpaceDescriptor& space, const Gauge& gauge, double r, int samples,
                                         std::uint64_t seed, double radius) {
  space.validate();
  if (!(r > 1)) throw ValidationError("monotonicity_strength: r must exceed 1");
  if (samples < 1) throw ValidationError("monotonicity_strength: samples must be positive");
  const GaugePotentialCore core(space, gauge);
  const int d = space.flat_dim();
  std::vector<std::pair<Vec, Vec>> pairs;
  Rng rng(seed);
  auto draw = [&]() {
    Vec v = rng.normal_vec(d);
    if (std::isfinite(radius)) {
      v /= norm(space, v);
      v *= radius * std::pow(rng.uniform(), 1.0 / d);
    }
    return v;
  };
  for (int i = 0; i < samples; ++i) pairs.emplace_back(draw(), draw());
  const double R = std::isfinite(radius) ? radius : 1.0;
  for (double a : {0.0, 0.25, 0.5, 1.0})
    for (double t : {1e-3, 1e-2, 0.1, 0.5}) {
      Vec x = Vec::Zero(d), y = Vec::Zero(d);
      x[0] = a * R;
      y[0] = a * R;
      if (d > 1) y[1] = t * R;
      else y[0] += t * R;
      if (std::isfinite(radius) && (norm(space, x) > radius || norm(space, y) > radius)) continue;
      pairs.emplace_back(x, y);
    }
  MonotonicityReport rep;
  rep.fitted_c = kInf;
  std::vector<std::pair<double, double>> vals;
  for (auto& [x, y] : pairs) {
    const double dn = norm(space, x - y);
    if (dn == 0.0) continue;
    const double in = (x - y).dot(core.duality_map(x) - core.duality_map(y));
    vals.emplace_back(in, std::pow(dn, r));
    rep.fitted_c = std::min(rep.fitted_c, in / std::pow(dn, r));
  }
  rep.samples = static_cast<int>(vals.size());
  rep.worst_slack = kInf;
  for (auto& [in, dr] : vals) rep.worst_slack = std::min(rep.worst_slack, in - rep.fitted_c * dr);
  return rep;
}

TotalConvexityReport total_convexity_modulus(const Potential& psi, const Vec& x, const std::vector<double>& t,
                                             int budget, std::uint64_t seed) {
  if (!psi.in_interior(x)) throw PreconditionError("total_convexity_modulus: x must be interior");
  if (budget < 1) throw ValidationError("total_convexity_modulus: budget must be positive");
  TotalConvexityReport rep;
  rep.t = t;
  rep.seed = seed;
  const SpaceDescriptor& s = psi.space();
  const int d = psi.dim();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] > 0)) throw ValidationError("total_convexity_modulus: t must be positive");
    Rng rng = Rng::derive(seed, k);
    auto score = [&](const Vec& u, const Vec&) {
      const double n = norm(s, u);
      if (!(n > 0)) return std::nan("");
      const double v = psi.divergence(x + t[k] * u / n, x);
      return std::isfinite(v) ? v : std::nan("");
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < d; ++i)
      for (double sg : {1.0, -1.0}) {
        Vec u = Vec::Zero(d);
        u[i] = sg;
        const double v = score(u, u);
        if (std::isfinite(v)) cands.push_back({u, Vec::Zero(1), v});
      }
    for (int i = 0; i < budget; ++i) {
      const Vec u = rng.normal_vec(d);
      const double v = score(u, u);
      if (std::isfinite(v)) cands.push_back({u, Vec::Zero(1), v});
    }
    if (cands.empty()) {
      rep.nu.push_back(kInf);
      continue;
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.v < b.v; });
    Candidate best = cands.front();
    for (std::size_t i = 0; i < std::min<std::size_t>(4, cands.size()); ++i) {
      Candidate c = polish(score, cands[i], 1.0, rng);
      if (c.v < best.v) best = c;
    }
    rep.nu.push_back(best.v);
  }
  return rep;
}

}  // namespace bregproj
