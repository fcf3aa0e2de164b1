// Pythagorean, oracle-equivalence, Alber and cyclic suites.

#include <array>

#include <bregproj/convex_sets.hpp>
#include <bregproj/operators.hpp>
#include <bregproj/parallel.hpp>
#include <bregproj/projections.hpp>

#include "common.hpp"

namespace bregproj::suites {

using detail::scaled;

namespace {

struct NamedPotential {
  std::string label;
  PotentialPtr psi;
};

std::vector<NamedPotential> pythagorean_potentials(int n) {
  return {{"hilbert", make_gauge_potential(SpaceDescriptor::vectors(n), Gauge::identity())},
          {"gauge_phi(1,1/4)@l4", make_gauge_potential(SpaceDescriptor::vectors(n, NormSpec::lp(4.0)),
                                                       Gauge::power(1.0, 0.25))},
          {"kl", make_kl(SpaceDescriptor::vectors(n))},
          {"burg", make_burg(SpaceDescriptor::vectors(n))}};
}

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

// Dual-coordinate sets meeting the image of each potential's domain.
std::vector<std::pair<std::string, ConvexSet>> dual_sets(const std::string& label) {
  if (label == "kl")
    return {{"dual_hyperplane", ConvexSet::hyperplane(v3(1, 1, 1), 0.0).in_dual()},
            {"dual_halfspace", ConvexSet::halfspace(v3(1, -1, 0.5), -0.2).in_dual()}};
  if (label == "burg")
    return {{"dual_hyperplane", ConvexSet::hyperplane(v3(1, 1, 1), -3.0).in_dual()},
            {"dual_halfspace", ConvexSet::halfspace(v3(1, 1, 1), -4.0).in_dual()}};
  return {{"dual_hyperplane", ConvexSet::hyperplane(v3(1, 2, 1), 1.0).in_dual()},
          {"dual_halfspace", ConvexSet::halfspace(v3(1, 2, 1), 0.5).in_dual()}};
}

}  // namespace

Report pythagorean(const Options& opt) {
  const int probes = scaled(500, opt);
  const int ys = 3;
  Mat A(2, 3);
  A << 1, 1, 1, 1, -1, 0.5;
  const std::vector<std::pair<std::string, ConvexSet>> sets = {
      {"hyperplane", ConvexSet::hyperplane(v3(1, 2, 1), 2.0)},
      {"affine2", ConvexSet::affine(A, (Vec(2) << 3.0, 0.5).finished())},
      {"halfspace", ConvexSet::halfspace(v3(1, 1, 2), 2.0)},
      {"box", ConvexSet::box(v3(0.5, 0.2, 0.8), v3(1.5, 1.0, 2.0))},
      {"simplex", ConvexSet::simplex(3, 2.0)},
      {"ball", ConvexSet::ball(v3(1, 1, 1), 0.7)}};
  const auto pots = pythagorean_potentials(3);

  struct Job {
    std::size_t pot;
    std::string set_label;
    ConvexSet K;
    Side side;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < pots.size(); ++p) {
    for (const auto& [name, K] : sets) jobs.push_back({p, name, K, Side::left});
    for (const auto& [name, K] : dual_sets(pots[p].label)) jobs.push_back({p, name, K, Side::right});
  }
  std::vector<Report> parts(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    const Job& job = jobs[static_cast<std::size_t>(j)];
    const auto& pot = pots[job.pot];
    double mn = kInf, mx = 0.0, conv = 1.0, vr = 0.0;
    int count = 0;
    for (int k = 0; k < ys; ++k) {
      Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(j * 97 + k));
      // y outside the set (in image coordinates for right projections), so z != y
      Vec y(3);
      for (int attempt = 0; attempt < 200; ++attempt) {
        for (int i = 0; i < 3; ++i) y[i] = std::exp(rng.uniform(-1.5, 1.5));
        const Vec image = job.side == Side::left ? y : Vec(pot.psi->gradient(y));
        if (!contains(job.K, image, 1e-6)) break;
      }
      const PythagoreanReport r =
          verify_pythagorean(pot.psi, job.K, y, job.side, probes, opt.seed + static_cast<std::uint64_t>(k), 0.0);
      mn = std::min(mn, r.min_residual);
      mx = std::max(mx, r.max_abs_residual);
      conv = std::min(conv, r.converged ? 1.0 : 0.0);
      vr = std::max(vr, r.variational_residual);
      count += static_cast<int>(r.residuals.size());
    }
    Report& rep = parts[static_cast<std::size_t>(j)];
    const std::string group =
        std::string(job.side == Side::left ? "left/" : "right/") + pot.label + "/" + job.set_label;
    rep.check(group, "converged", conv, Bound::at_least, 1.0);
    rep.check(group, "min_residual", mn, Bound::at_least, -1e-8, std::to_string(count) + " probes");
    if (job.K.is_affine()) rep.check(group, "max_abs_residual", mx, Bound::at_most, 1e-6, "equality case");
    rep.info(group, "variational_residual", vr);
  });
  Report rep;
  for (auto& p : parts) rep.merge(p);
  return rep;
}

// ---------------------------------------------------------------------------
// Oracle equivalence on R^2.

namespace {

constexpr double kGrid = 1e-3;

struct Objective {
  std::function<double(const Vec&)> f;  // +inf outside the domain
  std::function<Vec(const Vec&)> grad;
};

struct BruteResult {
  Vec point;
  bool on_window_edge = false;
};

// Dense grid over a window (2-D) or a segment of a line (1-D), with grid
// points outside K snapped onto K by the exact Euclidean projection.
BruteResult brute_force(const Objective& obj, const ConvexSet& K, const Vec& lo, const Vec& hi, bool window_edges) {
  BruteResult br;
  double best = kInf;
  const int nx = static_cast<int>(std::ceil((hi[0] - lo[0]) / kGrid));
  const int ny = static_cast<int>(std::ceil((hi[1] - lo[1]) / kGrid));
  Vec g(2);
  for (int i = 0; i <= nx; ++i) {
    g[0] = lo[0] + i * kGrid;
    for (int j = 0; j <= ny; ++j) {
      g[1] = lo[1] + j * kGrid;
      const Vec c = contains(K, g, 0.0) ? g : euclidean_project_coords(K, g);
      const double v = obj.f(c);
      if (v < best) {
        best = v;
        br.point = c;
      }
    }
  }
  if (window_edges && br.point.size() == 2) {
    const double margin = std::min((br.point - lo).minCoeff(), (hi - br.point).minCoeff());
    br.on_window_edge = margin < kGrid;
  }
  return br;
}

BruteResult brute_force_line(const Objective& obj, const ConvexSet& H, const Vec& anchor, double half_length) {
  const Vec a = H.a / H.a.norm();
  const Vec dir = (Vec(2) << -a[1], a[0]).finished();
  const Vec base = euclidean_project_coords(H, anchor);
  BruteResult br;
  double best = kInf;
  const int n = static_cast<int>(std::ceil(half_length / kGrid));
  int bk = 0;
  for (int k = -n; k <= n; ++k) {
    const Vec c = base + (k * kGrid) * dir;
    const double v = obj.f(c);
    if (v < best) {
      best = v;
      br.point = c;
      bk = k;
    }
  }
  br.on_window_edge = bk == -n || bk == n;
  return br;
}

// Accelerated projected gradient with backtracking and function-value restarts.
Vec first_order_solve(const Objective& obj, const ConvexSet& K, Vec x) {
  double L = 1.0, t = 1.0;
  Vec y = x;
  double fx = obj.f(x);
  for (int k = 0; k < 200000; ++k) {
    const Vec g = obj.grad(y);
    const double fy = obj.f(y);
    Vec xn;
    double fn = kInf;
    for (int bt = 0; bt < 200; ++bt) {
      xn = euclidean_project_coords(K, y - g / L);
      fn = obj.f(xn);
      const Vec d = xn - y;
      if (std::isfinite(fn) && fn <= fy + g.dot(d) + 0.5 * L * d.squaredNorm() + 1e-15 * std::abs(fy)) break;
      L *= 2.0;
    }
    if (fn > fx) {  // restart from the last accepted point
      if (t == 1.0) break;
      y = x;
      t = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const Vec step = xn - x;
    y = xn + ((t - 1.0) / tn) * step;
    t = tn;
    if (!std::isfinite(obj.f(y))) y = xn;
    x = xn;
    fx = fn;
    L *= 0.95;
    if (step.norm() <= 1e-14 * (1.0 + x.norm()) && k > 20) break;
  }
  return x;
}

}  // namespace

Report oracle(const Options& opt) {
  const int instances = scaled(50, opt);
  const auto pots = pythagorean_potentials(2);
  const std::array<const char*, 4> kinds = {"halfspace", "ball", "box", "hyperplane"};
  std::vector<Report> parts(static_cast<std::size_t>(instances));
  parallel_for(instances, [&](int inst) {
    Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(inst) + 5000);
    const auto& pot = pots[static_cast<std::size_t>(inst % 4)];
    const std::string kind = kinds[static_cast<std::size_t>((inst / 4) % 4)];
    const PotentialPtr& psi = pot.psi;
    const Vec c = rng.uniform_vec(2, 0.8, 1.8);
    Vec y = c + rng.uniform(0.3, 0.9) * rng.unit_vec(2);
    y = y.cwiseMax(0.15);
    Report& rep = parts[static_cast<std::size_t>(inst)];

    for (Side side : {Side::left, Side::right}) {
      const bool left = side == Side::left;
      const Vec center = left ? c : psi->gradient(c);
      const double shrink = (!left && pot.label == "burg") ? 0.5 : 1.0;
      ConvexSet K;
      if (kind == std::string("ball")) {
        K = ConvexSet::ball(center, shrink * rng.uniform(0.3, 0.6));
      } else if (kind == std::string("box")) {
        const Vec w = shrink * rng.uniform_vec(2, 0.3, 1.0);
        K = ConvexSet::box(center - 0.5 * w, center + 0.5 * w);
      } else {
        const Vec a = rng.unit_vec(2);
        K = kind == std::string("halfspace") ? ConvexSet::halfspace(a, a.dot(center))
                                             : ConvexSet::hyperplane(a, a.dot(center));
      }
      Objective obj;
      Vec anchor;
      if (left) {
        obj.f = [&](const Vec& x) { return psi->divergence(x, y); };
        obj.grad = [&](const Vec& x) { return Vec(psi->gradient(x) - psi->gradient(y)); };
        anchor = y;
      } else {
        obj.f = [&](const Vec& xi) {
          return psi->conjugate_in_interior(xi) ? psi->conjugate_value(xi) - xi.dot(y) : kInf;
        };
        obj.grad = [&](const Vec& xi) { return Vec(psi->conjugate_gradient(xi) - y); };
        anchor = psi->gradient(y);
      }
      ProjectionOptions popt;
      popt.tol = 1e-10;
      const ConvexSet Kset = left ? K : K.in_dual();
      const ProjectionResult pr = left ? left_project(psi, Kset, y, popt) : right_project(psi, Kset, y, popt);
      const Vec sol = left ? pr.point : pr.dual_point;

      BruteResult br;
      if (K.kind == SetKind::hyperplane) {
        br = brute_force_line(obj, K, anchor, 2.0);
      } else if (K.kind == SetKind::halfspace) {
        const Vec m = euclidean_project_coords(K, anchor);
        br = brute_force(obj, K, m - Vec::Constant(2, 1.0), m + Vec::Constant(2, 1.0), true);
      } else {
        const Vec lo = K.kind == SetKind::box ? K.lower : Vec(K.center - Vec::Constant(2, K.radius));
        const Vec hi = K.kind == SetKind::box ? K.upper : Vec(K.center + Vec::Constant(2, K.radius));
        br = brute_force(obj, K, lo, hi, false);
      }
      const Vec fo = first_order_solve(obj, K, center);

      const std::string group = std::string("instance") + std::to_string(inst) + "/" + (left ? "left/" : "right/") +
                                pot.label + "/" + kind;
      rep.check(group, "converged", pr.converged ? 1.0 : 0.0, Bound::at_least, 1.0);
      rep.check(group, "grid_distance_steps", (br.point - sol).norm() / kGrid, Bound::at_most, 2.0);
      rep.check(group, "grid_window_edge", br.on_window_edge ? 1.0 : 0.0, Bound::at_most, 0.0);
      rep.check(group, "first_order_distance", (fo - sol).norm(), Bound::at_most, 1e-6);
    }
  });
  Report rep;
  for (auto& p : parts) rep.merge(p);
  return rep;
}

// ---------------------------------------------------------------------------

Report alber(const Options& opt) {
  const int points = scaled(100, opt);
  Report rep;
  struct Cone {
    std::string label;
    ConvexSet K;
  };
  Rng setup(opt.seed + 99);
  const Vec ray = setup.unit_vec(3);
  Mat sub(3, 2);
  sub.col(0) = setup.unit_vec(3);
  sub.col(1) = setup.unit_vec(3);
  Mat line(3, 1);
  line.col(0) = setup.unit_vec(3);
  const std::vector<Cone> cones = {{"orthant", ConvexSet::orthant(3)},
                                   {"ray", ConvexSet::ray(ray)},
                                   {"subspace_dim1", ConvexSet::subspace(line)},
                                   {"subspace_dim2", ConvexSet::subspace(sub)}};
  const std::vector<double> ps = {1.5, 2.0, 3.0};
  std::vector<Report> parts(ps.size() * cones.size());
  parallel_for(static_cast<int>(parts.size()), [&](int j) {
    const double p = ps[static_cast<std::size_t>(j) / cones.size()];
    const Cone& cone = cones[static_cast<std::size_t>(j) % cones.size()];
    const SpaceDescriptor space = SpaceDescriptor::vectors(3, NormSpec::lp(p));
    const Gauge g = Gauge::monomial(p);
    double rec = 0, dual_rec = 0, pair = 0, conv = 1;
    for (int i = 0; i < points; ++i) {
      Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(j * 1000 + i));
      const Vec x = 1.5 * rng.normal_vec(3);
      const AlberReport a = alber_decompose(space, g, cone.K, x, 1e-10);
      rec = std::max(rec, a.reconstruction_residual);
      dual_rec = std::max(dual_rec, a.dual_reconstruction_residual);
      pair = std::max(pair, a.pairing_residual);
      conv = std::min(conv, a.converged ? 1.0 : 0.0);
    }
    Report& r = parts[static_cast<std::size_t>(j)];
    const std::string group = "p=" + format_number(p) + "/" + cone.label;
    r.check(group, "reconstruction_residual", rec, Bound::at_most, 1e-6);
    r.check(group, "pairing_residual", pair, Bound::at_most, 1e-6);
    r.info(group, "dual_reconstruction_residual", dual_rec);
    r.info(group, "all_converged", conv);
  });
  for (auto& p : parts) rep.merge(p);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Closest feasible point among the face candidates of a two-halfspace polyhedron in R^2.
Vec two_halfspace_projection(const ConvexSet& H1, const ConvexSet& H2, const Vec& y) {
  auto feasible = [&](const Vec& x) { return H1.a.dot(x) <= H1.b + 1e-12 && H2.a.dot(x) <= H2.b + 1e-12; };
  std::vector<Vec> cand = {y};
  cand.push_back(y - (H1.a.dot(y) - H1.b) / H1.a.squaredNorm() * H1.a);
  cand.push_back(y - (H2.a.dot(y) - H2.b) / H2.a.squaredNorm() * H2.a);
  Mat A(2, 2);
  A.row(0) = H1.a.transpose();
  A.row(1) = H2.a.transpose();
  cand.push_back(A.fullPivLu().solve((Vec(2) << H1.b, H2.b).finished()));
  Vec best;
  double bd = kInf;
  for (const auto& c : cand)
    if (feasible(c) && (c - y).norm() < bd) {
      bd = (c - y).norm();
      best = c;
    }
  return best;
}

// Independent KL projection onto {A x = b}: Newton on the multipliers of
// x(mu) = y * exp(A^T mu).
Vec kl_affine_oracle(const Mat& A, const Vec& b, const Vec& y) {
  Vec mu = Vec::Zero(A.rows());
  for (int it = 0; it < 200; ++it) {
    const Vec x = (y.array() * (A.transpose() * mu).array().exp()).matrix();
    const Vec r = A * x - b;
    if (r.norm() < 1e-15 * (1.0 + b.norm())) break;
    const Mat J = A * x.asDiagonal() * A.transpose();
    Vec step = J.ldlt().solve(r);
    double s = 1.0;
    for (int k = 0; k < 60; ++k) {
      const Vec m2 = mu - s * step;
      const Vec x2 = (y.array() * (A.transpose() * m2).array().exp()).matrix();
      if ((A * x2 - b).norm() < r.norm()) break;
      s *= 0.5;
    }
    mu -= s * step;
  }
  return (y.array() * (A.transpose() * mu).array().exp()).matrix();
}

// Two unit normals separated by an angle in [30, 150] degrees.
std::pair<Vec, Vec> spread_normals(Rng& rng, int dim) {
  for (;;) {
    Vec a = rng.unit_vec(dim), b = rng.unit_vec(dim);
    if (std::abs(a.dot(b)) <= std::cos(M_PI / 6)) return {a, b};
  }
}

}  // namespace

Report cyclic(const Options& opt) {
  Report rep;
  const int instances = scaled(20, opt);
  const PotentialPtr hilbert = make_gauge_potential(SpaceDescriptor::vectors(2), Gauge::identity());
  double dyk_err = 0, naive_gap = 0;
  int dyk_sweeps = 0;
  double dyk_conv = 1;
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(i) + 700);
    auto [a1, a2] = spread_normals(rng, 2);
    const Vec c = rng.normal_vec(2);
    const ConvexSet H1 = ConvexSet::halfspace(a1, a1.dot(c)), H2 = ConvexSet::halfspace(a2, a2.dot(c));
    const Vec y = c + 2.0 * rng.normal_vec(2);
    const IterationTrace tr = cyclic_project(hilbert, {H1, H2}, y, CyclicMode::dykstra_hilbert, 200, 1e-12);
    const Vec truth = two_halfspace_projection(H1, H2, y);
    dyk_err = std::max(dyk_err, (tr.last() - truth).norm());
    dyk_sweeps = std::max(dyk_sweeps, tr.sweeps);
    dyk_conv = std::min(dyk_conv, tr.converged ? 1.0 : 0.0);
    const IterationTrace naive = cyclic_project(hilbert, {H1, H2}, y, CyclicMode::naive_cyclic, 200, 1e-12);
    naive_gap = std::max(naive_gap, (naive.last() - truth).norm());
  }
  rep.check("dykstra_hilbert/two_halfspaces", "max_distance_to_closed_form", dyk_err, Bound::at_most, 1e-6);
  rep.check("dykstra_hilbert/two_halfspaces", "max_sweeps", dyk_sweeps, Bound::at_most, 200);
  rep.check("dykstra_hilbert/two_halfspaces", "all_converged", dyk_conv, Bound::at_least, 1.0);
  rep.info("naive_hilbert/two_halfspaces", "max_distance_to_projection", naive_gap,
           "naive cyclic lands in the intersection, not necessarily at the projection");

  const PotentialPtr kl = make_kl(SpaceDescriptor::vectors(3));
  double kl_err = 0, kl_indep = 0, kl_conv = 1;
  int kl_sweeps = 0;
  for (int i = 0; i < instances; ++i) {
    Rng rng = Rng::derive(opt.seed, static_cast<std::uint64_t>(i) + 900);
    auto [a1, a2] = spread_normals(rng, 3);
    const Vec c = rng.uniform_vec(3, 0.5, 2.0);
    const Vec y = rng.uniform_vec(3, 0.2, 3.0);
    const ConvexSet H1 = ConvexSet::hyperplane(a1, a1.dot(c)), H2 = ConvexSet::hyperplane(a2, a2.dot(c));
    Mat A(2, 3);
    A.row(0) = a1.transpose();
    A.row(1) = a2.transpose();
    const Vec b = (Vec(2) << a1.dot(c), a2.dot(c)).finished();
    ProjectionOptions popt;
    popt.tol = 1e-12;
    const Vec direct = left_project(kl, ConvexSet::affine(A, b), y, popt).point;
    const IterationTrace tr = cyclic_project(kl, {H1, H2}, y, CyclicMode::naive_cyclic, 500, 1e-12, direct);
    kl_err = std::max(kl_err, (tr.last() - direct).norm());
    kl_indep = std::max(kl_indep, (direct - kl_affine_oracle(A, b, y)).norm());
    kl_sweeps = std::max(kl_sweeps, tr.sweeps);
    kl_conv = std::min(kl_conv, tr.converged ? 1.0 : 0.0);
  }
  rep.check("kl_naive/two_hyperplanes", "max_distance_to_stacked_affine", kl_err, Bound::at_most, 1e-6);
  rep.check("kl_naive/two_hyperplanes", "max_sweeps", kl_sweeps, Bound::at_most, 500);
  rep.check("kl_naive/two_hyperplanes", "all_converged", kl_conv, Bound::at_least, 1.0);
  rep.check("kl_naive/two_hyperplanes", "stacked_affine_vs_newton_oracle", kl_indep, Bound::at_most, 1e-9);
  return rep;
}

}  // namespace bregproj::suites
