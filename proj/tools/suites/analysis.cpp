// Conjugacy, identities, spectral and quasigauge suites.

#include <Eigen/Eigenvalues>

#include <bregproj/divergence.hpp>
#include <bregproj/gauges.hpp>
#include <bregproj/metrology.hpp>
#include <bregproj/parallel.hpp>

#include "common.hpp"

namespace bregproj::suites {

using detail::Entry;
using detail::rel_diff;
using detail::scaled;

namespace {

std::vector<SpaceDescriptor> conjugacy_spaces() {
  return {SpaceDescriptor::vectors(2), SpaceDescriptor::vectors(4), SpaceDescriptor::vectors(8),
          SpaceDescriptor::hermitian(2), SpaceDescriptor::hermitian(4)};
}

struct Job {
  SpaceDescriptor space;
  Entry entry;
  std::uint64_t seed;
};

std::vector<Job> jobs_for(const std::vector<SpaceDescriptor>& spaces, std::uint64_t seed) {
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    Rng rng = Rng::derive(seed, 1000 + s);
    for (auto& e : detail::catalog(spaces[s], rng)) jobs.push_back({spaces[s], e, seed * 7919 + jobs.size()});
  }
  return jobs;
}

// Independent matrix logarithm for the Umegaki oracle.
CMat logm(const CMat& x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(x);
  return es.eigenvectors() * es.eigenvalues().array().log().matrix().cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

Report conjugacy(const Options& opt) {
  const int points = scaled(1000, opt);
  auto jobs = jobs_for(conjugacy_spaces(), opt.seed);
  std::vector<Report> parts(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    const Job& job = jobs[static_cast<std::size_t>(j)];
    const Potential& psi = *job.entry.psi;
    double fy = 0, inv = 0, inv_dual = 0, grad = 0, cgrad = 0;
    for (int i = 0; i < points; ++i) {
      Rng rng = Rng::derive(job.seed, static_cast<std::uint64_t>(i));
      const Vec x = job.entry.sample(rng);
      const Vec g = psi.gradient(x);
      const double a = psi.value(x), b = psi.conjugate_value(g), c = x.dot(g);
      fy = std::max(fy, std::abs(a + b - c) / std::max({1.0, std::abs(a), std::abs(b), std::abs(c)}));
      inv = std::max(inv, (psi.conjugate_gradient(g) - x).norm() / std::max(1.0, x.norm()));
      inv_dual = std::max(inv_dual, (psi.gradient(psi.conjugate_gradient(g)) - g).norm() / std::max(1.0, g.norm()));
      grad = std::max(grad, gradient_check(psi, {x}));
      cgrad = std::max(cgrad, gradient_check(psi, {g}, {}, true));
    }
    Report& r = parts[static_cast<std::size_t>(j)];
    const std::string group = job.entry.label + "@" + detail::space_label(job.space);
    r.check(group, "fenchel_young_rel", fy, Bound::at_most, 1e-8);
    r.check(group, "conj_grad_inverse", inv, Bound::at_most, 1e-6);
    r.check(group, "grad_conj_grad_inverse", inv_dual, Bound::at_most, 1e-6);
    r.check(group, "gradient_fd_rel", grad, Bound::at_most, 1e-5);
    r.info(group, "conjugate_gradient_fd_rel", cgrad);
  });
  Report rep;
  for (auto& p : parts) rep.merge(p);
  return rep;
}

Report identities(const Options& opt) {
  const int quads = scaled(1000, opt);
  auto jobs = jobs_for({SpaceDescriptor::vectors(4), SpaceDescriptor::hermitian(2)}, opt.seed + 1);
  std::vector<Report> parts(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    const Job& job = jobs[static_cast<std::size_t>(j)];
    IdentityReport worst;
    for (int i = 0; i < quads; ++i) {
      Rng rng = Rng::derive(job.seed, static_cast<std::uint64_t>(i));
      const Vec x = job.entry.sample(rng), y = job.entry.sample(rng), z = job.entry.sample(rng),
                w = job.entry.sample(rng);
      const double l1 = rng.uniform(0.1, 2.0), l2 = rng.uniform(0.1, 2.0);
      const Vec shift = rng.normal_vec(static_cast<int>(x.size()));
      const IdentityReport r = identity_suite(*job.entry.psi, x, y, z, w, l1, l2, shift);
      worst.affine_scaling = std::max(worst.affine_scaling, r.affine_scaling);
      worst.symmetric_sum = std::max(worst.symmetric_sum, r.symmetric_sum);
      worst.cosine = std::max(worst.cosine, r.cosine);
      worst.quadruple = std::max(worst.quadruple, r.quadruple);
      worst.dual_swap = std::isnan(r.dual_swap) ? NAN : std::max(worst.dual_swap, r.dual_swap);
    }
    Report& r = parts[static_cast<std::size_t>(j)];
    const std::string group = job.entry.label + "@" + detail::space_label(job.space);
    r.check(group, "affine_scaling", worst.affine_scaling, Bound::at_most, 1e-8);
    r.check(group, "symmetric_sum", worst.symmetric_sum, Bound::at_most, 1e-8);
    r.check(group, "cosine", worst.cosine, Bound::at_most, 1e-8);
    r.check(group, "quadruple", worst.quadruple, Bound::at_most, 1e-8);
    r.check(group, "dual_swap", worst.dual_swap, Bound::at_most, 1e-8);
  });
  Report rep;
  for (auto& p : parts) rep.merge(p);
  return rep;
}

Report spectral(const Options& opt) {
  Report rep;
  const int pairs = scaled(200, opt);
  struct Kind {
    std::string label;
    std::function<PotentialPtr(const SpaceDescriptor&)> make;
  };
  const std::vector<Kind> kinds = {
      {"umegaki", [](const SpaceDescriptor& s) { return make_kl(s); }},
      {"log_det", [](const SpaceDescriptor& s) { return make_burg(s); }},
      {"fermi_dirac", [](const SpaceDescriptor& s) { return make_fermi_dirac(s); }},
      {"alpha(1/2)", [](const SpaceDescriptor& s) { return make_alpha(s, 0.5); }},
      {"alpha(-1)", [](const SpaceDescriptor& s) { return make_alpha(s, -1.0); }}};
  std::uint64_t stream = 0;
  for (const auto& k : kinds) {
    for (int n : {2, 4}) {
      const auto ms = SpaceDescriptor::hermitian(n);
      const auto vs = SpaceDescriptor::vectors(n);
      PotentialPtr pm = k.make(ms), pv = k.make(vs);
      auto sm = detail::interior_sampler(pm);
      auto sv = detail::interior_sampler(pv);
      double inv = 0, diag = 0, neg = kInf;
      for (int i = 0; i < pairs; ++i) {
        Rng rng = Rng::derive(opt.seed, (++stream) * 100003ULL);
        const Vec x = sm(rng), y = sm(rng);
        const CMat u = rng.unitary(n);
        const CMat X = unflatten_hermitian(x, n), Y = unflatten_hermitian(y, n);
        const CMat UX = u * X * u.adjoint(), UY = u * Y * u.adjoint();
        const double d0 = bregman(*pm, x, y);
        const double d1 = bregman(*pm, flatten_hermitian(0.5 * (UX + UX.adjoint())),
                                  flatten_hermitian(0.5 * (UY + UY.adjoint())));
        inv = std::max(inv, rel_diff(d0, d1));
        neg = std::min(neg, d0);
        const Vec p = sv(rng), q = sv(rng);
        const double dm = bregman(*pm, flatten_hermitian(p.cast<Complex>().asDiagonal().toDenseMatrix()),
                                  flatten_hermitian(q.cast<Complex>().asDiagonal().toDenseMatrix()));
        diag = std::max(diag, rel_diff(dm, bregman(*pv, p, q)));
      }
      const std::string group = k.label + "@herm" + std::to_string(n);
      rep.check(group, "unitary_invariance_rel", inv, Bound::at_most, 1e-8);
      rep.check(group, "diagonal_reduction_rel", diag, Bound::at_most, 1e-10);
      rep.check(group, "min_divergence", neg, Bound::at_least, -1e-12);
    }
  }

  // Umegaki on density matrices against an independent closed form, and the
  // printed sign variant for contrast.
  const int dens = scaled(1000, opt);
  for (int n : {2, 3, 4}) {
    const auto ms = SpaceDescriptor::hermitian(n);
    PotentialPtr kl = make_kl(ms), burg = make_burg(ms);
    double mn = kInf, printed = kInf, oracle = 0, logdet = 0;
    for (int i = 0; i < dens; ++i) {
      Rng rng = Rng::derive(opt.seed + 17, static_cast<std::uint64_t>(n * 1000003 + i));
      const CMat r = rng.density(n), s = rng.density(n);
      const double d = bregman(*kl, flatten_hermitian(r), flatten_hermitian(s));
      const double closed = (r * (logm(r) - logm(s)) - r + s).trace().real();
      mn = std::min(mn, d);
      printed = std::min(printed, (r * (logm(r) - logm(s)) - r - s).trace().real());
      oracle = std::max(oracle, rel_diff(d, closed));
      const CMat sir = s.inverse() * r;
      const double ld = sir.trace().real() - std::log(sir.determinant().real()) - n;
      logdet = std::max(logdet, rel_diff(bregman(*burg, flatten_hermitian(r), flatten_hermitian(s)), ld));
    }
    const std::string group = "density@herm" + std::to_string(n);
    rep.check(group, "umegaki_min", mn, Bound::at_least, -1e-12, "tr(r(log r - log s) - r + s)");
    rep.check(group, "umegaki_vs_closed_form_rel", oracle, Bound::at_most, 1e-9);
    rep.check(group, "log_det_vs_closed_form_rel", logdet, Bound::at_most, 1e-9);
    rep.info(group, "printed_sign_variant_min", printed, "the -r-s variant goes negative");
  }
  return rep;
}

Report quasigauge(const Options& opt) {
  (void)opt;
  Report rep;
  struct Case {
    std::string label;
    Quasigauge q;
  };
  const std::vector<Case> cases = {
      {"gauge", Quasigauge::from_gauge(Gauge::tabulated({{0, 0}, {1, 1}, {2, 3}}, 2.0))},
      {"one_step", Quasigauge::step(1.0, 2.0, true)},
      {"one_step_left", Quasigauge::step(1.0, 2.0, false)},
      {"flat_segment", Quasigauge(MonotoneGraph({{0, 0}, {1, 1}, {2, 1}}, 1.0), true)},
  };
  for (const auto& c : cases) {
    for (double u : {0.5, 1.0, 2.0, 5.0}) {
      const ConjugateCheck cc = conjugate_integral_check(c.q, u, 1e-4);
      rep.check(c.label, "u=" + format_number(u), cc.residual, Bound::at_most, 1e-4,
                "lhs=" + format_number(cc.lhs) + " rhs=" + format_number(cc.rhs));
    }
  }
  for (double u : {0.5, 1.0, 2.0, 5.0}) {
    const ConjugateCheck cc = conjugate_integral_check(Gauge::power(1.0, 0.25), u, 1e-4);
    rep.check("power_gauge(1,1/4)", "u=" + format_number(u), cc.residual, Bound::at_most, 1e-4,
              "lhs=" + format_number(cc.lhs) + " rhs=" + format_number(cc.rhs));
  }
  return rep;
}

}  // namespace bregproj::suites
