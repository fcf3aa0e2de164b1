#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/error.hpp>
#include <bregproj/projections.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::V;

TEST(LeftProject, KlOntoSimplex) {
  const auto s = SpaceDescriptor::vectors(2);
  const ProjectionResult r = left_project(make_kl(s), ConvexSet::simplex(2, 1), V({2, 2}));
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.point - V({0.5, 0.5})).norm(), 1e-8);
}

TEST(LeftProject, KlOntoSimplexIsNormalization) {
  Rng rng(31);
  const auto s = SpaceDescriptor::vectors(4);
  for (int i = 0; i < 20; ++i) {
    const Vec y = rng.uniform_vec(4, 0.1, 3);
    const ProjectionResult r = left_project(make_kl(s), ConvexSet::simplex(4, 1), y, {1e-12});
    EXPECT_LT((r.point - y / y.sum()).norm(), 1e-9);
  }
}

TEST(LeftProject, MemberIsFixed) {
  const auto s = SpaceDescriptor::vectors(3);
  const ProjectionResult r = left_project(make_hilbert(s), ConvexSet::ball(V({0, 0, 0}), 2), V({0.5, -1, 0.2}));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.point, V({0.5, -1, 0.2}));
}

TEST(LeftProject, L4HyperplaneAgainstLineSearch) {
  const auto s = SpaceDescriptor::vectors(2, NormSpec::lp(4));
  const auto psi = make_gauge_potential(s, Gauge::power(1, 0.5));
  const Vec y = V({1, 1.7});
  const ProjectionResult r = left_project(psi, ConvexSet::hyperplane(V({1, 1}), 1), y, {1e-12});
  double best = kInf, arg = 0;
  for (double t = -3; t <= 3; t += 1e-5) {
    const double d = psi->divergence(V({t, 1 - t}), y);
    if (d < best) best = d, arg = t;
  }
  EXPECT_NEAR(r.point[0], arg, 2e-5);
  EXPECT_NEAR(r.point.sum(), 1.0, 1e-12);
}

TEST(LeftProject, Infeasible) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_THROW(left_project(make_kl(s), ConvexSet::hyperplane(V({1, 1}), -1), V({1, 1})), InfeasibleError);
}

TEST(RightProject, FixedPointAndDualHyperplane) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto kl = make_kl(s);
  const ConvexSet Kh = ConvexSet::hyperplane(V({1, 1}), 0).in_dual();
  const ProjectionResult fixed = right_project(kl, Kh, V({2, 0.5}));
  EXPECT_LT((fixed.point - V({2, 0.5})).norm(), 1e-12);
  const ProjectionResult r = right_project(kl, Kh, V({2, 2}), {1e-12});
  EXPECT_NEAR(kl->gradient(r.point).sum(), 0.0, 1e-10);
  const PythagoreanReport v = verify_pythagorean(kl, Kh, V({2, 2}), Side::right, 200, 3);
  EXPECT_TRUE(v.passed);
  EXPECT_TRUE(v.equality_expected);
  EXPECT_LT(v.max_abs_residual, 1e-6);
}

TEST(Pythagorean, LeftInequalityAndAffineEquality) {
  const auto s = SpaceDescriptor::vectors(3);
  for (const auto& psi : {make_kl(s), make_burg(s), make_hilbert(s)}) {
    const PythagoreanReport box = verify_pythagorean(psi, ConvexSet::box(V({0.1, 0.1, 0.1}), V({1, 1, 1})), V({2, 0.05, 0.5}),
                                                     Side::left, 300, 5);
    EXPECT_TRUE(box.passed) << psi->name();
    EXPECT_GE(box.min_residual, -1e-8);
    const PythagoreanReport hp = verify_pythagorean(psi, ConvexSet::hyperplane(V({1, 2, 1}), 2), V({2, 0.5, 1}), Side::left, 300, 5);
    EXPECT_TRUE(hp.equality_expected);
    EXPECT_LT(hp.max_abs_residual, 1e-6) << psi->name();
  }
}

TEST(Alber, HilbertCone) {
  const auto s = SpaceDescriptor::vectors(3);
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const AlberReport r = alber_decompose(s, Gauge::identity(), ConvexSet::ray(V({1, 2, -1})), rng.normal_vec(3), 1e-10);
    EXPECT_LT(r.reconstruction_residual, 1e-8);
    EXPECT_LT(r.pairing_residual, 1e-8);
  }
}

TEST(Alber, DualReconstructionAtPEqualsThree) {
  const auto s = SpaceDescriptor::vectors(3, NormSpec::lp(3));
  Rng rng(18);
  for (int i = 0; i < 20; ++i) {
    const AlberReport r = alber_decompose(s, Gauge::monomial(3), ConvexSet::ray(V({1, 2, -1})), rng.normal_vec(3), 1e-10);
    EXPECT_LT(r.dual_reconstruction_residual, 1e-6);
    EXPECT_LT(r.pairing_residual, 1e-6);
  }
}
