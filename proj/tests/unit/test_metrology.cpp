#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/metrology.hpp>
#include <bregproj/projections.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::V;

TEST(PowerLaw, RecoversExponent) {
  const PowerFit f = fit_power_law({0.1, 0.2, 0.4, 0.8}, {0.3 * 0.01, 0.3 * 0.04, 0.3 * 0.16, 0.3 * 0.64});
  EXPECT_NEAR(f.exponent, 2.0, 1e-12);
  EXPECT_NEAR(f.constant, 0.3, 1e-12);
}

TEST(GradientCheck, Examples) {
  const auto s = SpaceDescriptor::vectors(3);
  EXPECT_LT(gradient_check(*make_quadratic(s, (Mat(3, 3) << 2, 1, 0, 1, 2, 0, 0, 0, 1).finished()), {V({1, -2, 3})}), 1e-10);
  EXPECT_LT(gradient_check(*make_kl(s), {V({1, 2, 3})}), 1e-6);
  Rng rng(2);
  const auto h = SpaceDescriptor::hermitian(3);
  EXPECT_LT(gradient_check(*make_burg(h), {flatten_hermitian(rng.positive_definite(3, 0.3, 2))}), 1e-5);
}

TEST(Holder, HilbertHalfspaceIsLipschitz) {
  const auto s = SpaceDescriptor::vectors(3);
  const auto h = make_hilbert(s);
  const ConvexSet K = ConvexSet::halfspace(V({1, 0, 0}), 0);
  HolderProblem p;
  p.map = [&](const Vec& x) { return left_project(h, K, x).point; };
  p.sampler = [](Rng& r, double d) {
    const Vec x = r.normal_vec(3);
    return std::make_pair(x, Vec(x + d * r.unit_vec(3)));
  };
  p.input_norm = [](const Vec& v) { return v.norm(); };
  p.output_norm = p.input_norm;
  const HolderReport rep = estimate_holder(p, 400, 1.0, 3, {1e-1, 1e-2, 1e-3});
  EXPECT_NEAR(rep.exponent, 1.0, 0.05);
  EXPECT_LE(rep.max_ratio, 1.0 + 1e-9);
}

TEST(Moduli, HilbertClosedForm) {
  const ModulusReport m = convexity_smoothness_moduli(SpaceDescriptor::vectors(3), {0.1, 0.2, 0.4}, 500, 5);
  for (std::size_t k = 0; k < m.eps.size(); ++k) EXPECT_NEAR(m.delta[k], 1 - std::sqrt(1 - m.eps[k] * m.eps[k] / 4), 1e-9);
  EXPECT_NEAR(m.delta_fit.exponent, 2.0, 0.05);
}

TEST(Monotonicity, Examples) {
  const MonotonicityReport h = monotonicity_strength(SpaceDescriptor::vectors(3), Gauge::identity(), 2.0, 500, 1);
  EXPECT_NEAR(h.fitted_c, 1.0, 1e-9);
  const MonotonicityReport p3 = monotonicity_strength(SpaceDescriptor::vectors(3, NormSpec::lp(3)), Gauge::monomial(3), 3.0, 2000, 1);
  EXPECT_GT(p3.fitted_c, 0.0);
  EXPECT_GE(p3.worst_slack, -1e-9);
  const MonotonicityReport p4 =
      monotonicity_strength(SpaceDescriptor::vectors(3, NormSpec::lp(4)), Gauge::identity(), 4.0, 2000, 1, 1.0);
  EXPECT_GT(p4.fitted_c, 0.0);
}

TEST(TotalConvexity, Examples) {
  const auto s = SpaceDescriptor::vectors(2);
  const TotalConvexityReport q = total_convexity_modulus(*make_quadratic(s, Mat::Identity(2, 2)), V({1, 1}), {0.5, 1}, 200, 1);
  EXPECT_NEAR(q.nu[0], 0.125, 1e-12);
  EXPECT_NEAR(q.nu[1], 0.5, 1e-12);
  // kl at (1,1), t = 0.5 against a dense angular sweep
  const auto kl = make_kl(s);
  const TotalConvexityReport k = total_convexity_modulus(*kl, V({1, 1}), {0.5}, 400, 1);
  double best = kInf;
  for (int i = 0; i < 20000; ++i) {
    const double a = 2 * M_PI * i / 20000;
    best = std::min(best, kl->divergence(V({1 + 0.5 * std::cos(a), 1 + 0.5 * std::sin(a)}), V({1, 1})));
  }
  EXPECT_GT(k.nu[0], 0.0);
  EXPECT_NEAR(k.nu[0], best, 0.05 * best);
  const auto g = make_gauge_potential(SpaceDescriptor::vectors(2, NormSpec::lp(4)), Gauge::identity());
  for (double v : total_convexity_modulus(*g, V({0.3, -1}), {0.1, 0.5, 1}, 300, 2).nu) EXPECT_GT(v, 0.0);
}
