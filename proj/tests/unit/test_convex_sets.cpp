#include <gtest/gtest.h>

#include <bregproj/convex_sets.hpp>
#include <bregproj/error.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::diag;
using fixtures::V;

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(ConvexSet::simplex(2, 1), V({0.5, 0.5}), 1e-12));
  EXPECT_FALSE(contains(ConvexSet::halfspace(V({1, 0}), 0), V({1e-3, 0}), 1e-6));
  EXPECT_TRUE(contains(ConvexSet::psd_trace_slice(2, 1), flatten_hermitian(diag({0.5, 0.5})), 1e-12));
}

TEST(EuclideanProject, Examples) {
  EXPECT_LT((euclidean_project_coords(ConvexSet::halfspace(V({1, 0}), 0), V({2, 3})) - V({0, 3})).norm(), 1e-15);
  EXPECT_LT((euclidean_project_coords(ConvexSet::simplex(2, 1), V({2, 2})) - V({0.5, 0.5})).norm(), 1e-15);
  const Vec p = euclidean_project_coords(ConvexSet::psd_trace_slice(2, 1), flatten_hermitian(diag({2, -1})));
  EXPECT_LT((p - flatten_hermitian(diag({1, 0}))).norm(), 1e-14);
}

TEST(EuclideanProject, IdempotentAndFirmlyNonexpansive) {
  Rng rng(21);
  Mat A(2, 3);
  A << 1, 1, 1, 1, -1, 0.5;
  const std::vector<ConvexSet> sets = {ConvexSet::hyperplane(V({1, 2, 1}), 2), ConvexSet::halfspace(V({1, 1, 2}), 2),
                                       ConvexSet::affine(A, V({3, 0.5})), ConvexSet::box(V({0, 0, 0}), V({1, 2, 1})),
                                       ConvexSet::simplex(3, 2), ConvexSet::ball(V({1, 1, 1}), 0.7),
                                       ConvexSet::orthant(3), ConvexSet::second_order_cone(3)};
  for (const auto& K : sets) {
    for (int i = 0; i < 100; ++i) {
      const Vec x = 2 * rng.normal_vec(3), y = 2 * rng.normal_vec(3);
      const Vec px = euclidean_project_coords(K, x), py = euclidean_project_coords(K, y);
      EXPECT_LE(violation(K, px), 1e-10);
      EXPECT_LT((euclidean_project_coords(K, px) - px).norm(), 1e-10);
      EXPECT_LE((px - py).squaredNorm(), (px - py).dot(x - y) + 1e-10);
    }
  }
}

TEST(Simplex, SortedThresholdMatchesKkt) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const Vec x = rng.normal_vec(5);
    const Vec p = project_simplex(x, 1.5);
    EXPECT_NEAR(p.sum(), 1.5, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
    double tau = 0;
    int k = 0;
    for (int j = 0; j < 5; ++j)
      if (p[j] > 0) {
        tau += x[j] - p[j];
        ++k;
      }
    tau /= k;
    for (int j = 0; j < 5; ++j) {
      if (p[j] > 0) EXPECT_NEAR(x[j] - p[j], tau, 1e-12);
      else EXPECT_LE(x[j], tau + 1e-12);
    }
  }
}

TEST(PolarCone, Examples) {
  const ConvexSet o = polar_cone(ConvexSet::orthant(2));
  EXPECT_TRUE(contains(o, V({-1, -2}), 0));
  EXPECT_FALSE(contains(o, V({1, -2}), 1e-12));
  const ConvexSet r = polar_cone(ConvexSet::ray(V({1, 1})));
  EXPECT_TRUE(contains(r, V({1, -1}), 1e-12));
  EXPECT_TRUE(contains(r, V({-3, 1}), 1e-12));
  EXPECT_FALSE(contains(r, V({1, 0}), 1e-12));
  const ConvexSet sp = polar_cone(ConvexSet::subspace(V({1, 0, 0})));
  EXPECT_TRUE(contains(sp, V({0, 3, -4}), 1e-12));
  EXPECT_FALSE(contains(sp, V({0.1, 0, 0}), 1e-12));
}

TEST(PolarCone, BipolarOnSamples) {
  Rng rng(23);
  Mat G(3, 2);
  G << 1, 0, 1, 1, 0, 1;
  const ConvexSet K = ConvexSet::generated_cone(G);
  const ConvexSet Kp = polar_cone(K);
  for (int i = 0; i < 100; ++i) {
    const Vec x = sample_member(K, V({1, 1, 1}), 2.0, rng), y = sample_member(Kp, V({0, 0, 0}), 2.0, rng);
    EXPECT_LE(x.dot(y), 1e-10);
  }
}

TEST(Validate, RejectsEmptyAndMalformed) {
  EXPECT_THROW(ConvexSet::box(V({1, 0}), V({0, 1})).validate(), Error);
  EXPECT_THROW(ConvexSet::ball(V({0, 0}), -1).validate(), Error);
  EXPECT_THROW(ConvexSet::hyperplane(V({0, 0}), 1).validate(), Error);
}

TEST(Dual, CoordinatesFlag) {
  const ConvexSet K = ConvexSet::hyperplane(V({1, 1}), 0).in_dual();
  EXPECT_EQ(K.coordinates, Coordinates::dual);
}
