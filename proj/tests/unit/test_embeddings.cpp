#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/embeddings.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::diag;
using fixtures::mat2;
using fixtures::V;

TEST(Mazur, Examples) {
  const auto h = SpaceDescriptor::hermitian(2);
  const Vec x = flatten_hermitian(mat2(1, 0.5, 0.5, -2));
  EXPECT_LT((mazur(h, 0.7, 0.7, x) - x).norm(), 1e-14);
  EXPECT_LT((mazur(h, 1, 0.5, flatten_hermitian(diag({4, 0}))) - flatten_hermitian(diag({2, 0}))).norm(), 1e-14);
  const Vec sw = flatten_hermitian(mat2(0, 1, 1, 0));
  EXPECT_LT((mazur(h, 1, 0.5, sw) - sw).norm(), 1e-14);
}

TEST(Mazur, ScaleMultiplies) {
  const auto s = SpaceDescriptor::vectors(3);
  const Vec x = V({1, -4, 0.25});
  EXPECT_LT((mazur(s, 1, 0.5, x, 3.0) - 3.0 * mazur(s, 1, 0.5, x)).norm(), 1e-14);
}

TEST(DGamma, Examples) {
  const auto h = SpaceDescriptor::hermitian(2);
  EXPECT_NEAR(d_gamma(h, flatten_hermitian(diag({1, 0})), flatten_hermitian(diag({0.5, 0.5})), 0.5), 4 - 2 * std::sqrt(2.0), 1e-13);
  const Vec p = V({0.2, 0.8}), q = V({0.6, 0.4});
  const double hell = 2 * (p.array().sqrt() - q.array().sqrt()).square().sum();
  EXPECT_NEAR(d_gamma(h, flatten_hermitian(p.cast<Complex>().asDiagonal().toDenseMatrix()),
                      flatten_hermitian(q.cast<Complex>().asDiagonal().toDenseMatrix()), 0.5),
              hell, 1e-13);
  Rng rng(3);
  const Vec r = flatten_hermitian(rng.density(2));
  EXPECT_NEAR(d_gamma(h, r, r, 0.3), 0.0, 1e-13);
}

TEST(DGamma, ComposedMatchesClosedForm) {
  Rng rng(4);
  const auto h = SpaceDescriptor::hermitian(3);
  for (int i = 0; i < 20; ++i) {
    const Vec r = flatten_hermitian(rng.density(3)), s = flatten_hermitian(rng.density(3));
    EXPECT_NEAR(d_gamma(h, r, s, 0.4), d_gamma_composed(h, r, s, 0.4), 1e-10);
  }
}

TEST(Lozanovskii, Examples) {
  const auto l2 = SpaceDescriptor::vectors(2);
  EXPECT_LT((lozanovskii_inverse(l2, V({0.6, 0.8})) - V({0.36, 0.64})).norm(), 1e-14);
  const auto l3 = SpaceDescriptor::vectors(3, NormSpec::lp(3));
  const Vec x = V({0.5, 0.7, 1}) / norm(l3, V({0.5, 0.7, 1}));
  EXPECT_LT((lozanovskii_inverse(l3, x) - Vec(x.array().pow(3))).norm(), 1e-14);
  const LozanovskiiResult v = lozanovskii_forward(l3, V({0, 1, 0}));
  EXPECT_LT((v.point - V({0, 1, 0})).norm(), 1e-12);
}

TEST(Lozanovskii, BlockRoundTrip) {
  const auto b = SpaceDescriptor::vectors(4, NormSpec::block(3, 1.5, 2));
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    Vec x = rng.uniform_vec(4, 0.05, 1);
    x /= norm(b, x);
    const Vec z = lozanovskii_inverse(b, x);
    EXPECT_NEAR(z.sum(), 1.0, 1e-12);
    const LozanovskiiResult f = lozanovskii_forward(b, z);
    EXPECT_TRUE(f.converged);
    EXPECT_LT((f.point - x).norm(), 1e-9);
  }
}

TEST(SpinFactor, Examples) {
  const auto X = SpaceDescriptor::vectors(2, NormSpec::lp(3));
  EXPECT_EQ(spin_embed(X, SpinFactorPoint{V({0, 0}), 1.0}), V({0, 0}));
  const Vec u = V({1, 1}) / norm(X, V({1, 1}));
  const SpinFactorPoint v{u, 1.0};
  EXPECT_TRUE(v.positive(X));
  EXPECT_NEAR(norm(X, spin_embed(X, v)), 1.0, 1e-14);
}

TEST(Cptp, TracePreservingAndContractive) {
  Rng rng(7);
  const auto h = SpaceDescriptor::hermitian(2);
  for (int i = 0; i < 50; ++i) {
    const CptpMap phi = random_cptp(2, 3, rng);
    EXPECT_LT(phi.trace_preservation_error(), 1e-12);
    const CMat r = rng.density(2), s = rng.density(2);
    EXPECT_GE(d_gamma(h, flatten_hermitian(r), flatten_hermitian(s), 0.5) -
                  d_gamma(h, flatten_hermitian(phi.apply(r)), flatten_hermitian(phi.apply(s)), 0.5),
              -1e-12);
  }
}

TEST(Pullback, IdentityIsPlainProjection) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto kl = make_kl(s);
  const ConvexSet K = ConvexSet::simplex(2, 1);
  const ProjectionResult a = pullback_project(Embedding::identity(s), kl, K, Side::left, V({2, 1}), {1e-12});
  EXPECT_LT((a.point - V({2.0 / 3, 1.0 / 3})).norm(), 1e-9);
}
