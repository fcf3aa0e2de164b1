#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/operators.hpp>
#include <bregproj/projections.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::V;

TEST(LeftProx, IndicatorIsProjection) {
  const auto s = SpaceDescriptor::vectors(3);
  const auto kl = make_kl(s);
  const ConvexSet K = ConvexSet::simplex(3, 1);
  const Vec y = V({0.4, 2, 1});
  EXPECT_LT((left_prox(kl, K, 1.0, y, 1e-12).point - left_project(kl, K, y, {1e-12}).point).norm(), 1e-9);
  EXPECT_LT((left_resolvent(kl, MonotoneMap::subdifferential_of_indicator(K), 1.0, y, 1e-12).point -
             left_project(kl, K, y, {1e-12}).point).norm(), 1e-9);
}

TEST(LeftProx, HilbertQuadratic) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_LT((left_prox(make_hilbert(s), make_hilbert(s), 1.0, V({2, 0}), 1e-12).point - V({1, 0})).norm(), 1e-10);
}

TEST(LeftProx, KlLinear) {
  const auto s = SpaceDescriptor::vectors(3);
  const Vec c = V({0.5, -1, 2}), y = V({1, 2, 3});
  const auto f = make_combination(make_kl(s), 0.0, make_kl(s), 0.0, c, 0.0);
  const Vec z = left_prox(make_kl(s), f, 1.0, y, 1e-13).point;
  EXPECT_LT((z - Vec(y.array() * (-c.array()).exp())).norm(), 1e-9);
}

TEST(RightProx, HilbertEqualsLeft) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto q = make_quadratic(s, (Mat(2, 2) << 2, 0.5, 0.5, 1).finished());
  const auto h = make_hilbert(s);
  EXPECT_LT((right_prox(h, q, 0.7, V({1, -2}), 1e-12).point - left_prox(h, q, 0.7, V({1, -2}), 1e-12).point).norm(), 1e-9);
}

TEST(RightProx, BurgLinearScalar) {
  // argmin c z + (log(z/y) + y/z - 1): c + 1/z - y/z^2 = 0
  const auto s = SpaceDescriptor::vectors(1);
  const double c = 0.5, y = 1.0;
  const auto f = make_combination(make_kl(s), 0.0, make_kl(s), 0.0, V({c}), 0.0);
  const double z = right_prox(make_burg(s), f, 1.0, V({y}), 1e-13).point[0];
  EXPECT_NEAR(c + 1 / z - y / (z * z), 0.0, 1e-9);
}

TEST(LeftResolvent, KlScalar) {
  const auto s = SpaceDescriptor::vectors(1);
  const MonotoneMap T = MonotoneMap::affine(Mat::Identity(1, 1), V({-1}));
  EXPECT_NEAR(left_resolvent(make_kl(s), T, 1.0, V({1}), 1e-13).point[0], 1.0, 1e-12);
}

TEST(RightResolvent, ZeroMapIsIdentityAndHilbertMatchesLeft) {
  const auto s = SpaceDescriptor::vectors(2);
  const Vec xi = V({0.3, -0.4});
  EXPECT_LT((right_resolvent(make_kl(s), MonotoneMap::linear(Mat::Zero(2, 2)), 1.0, xi, 1e-12).point - xi).norm(), 1e-12);
  const MonotoneMap T = MonotoneMap::linear((Mat(2, 2) << 2, 1, -1, 1).finished());
  const auto h = make_hilbert(s);
  EXPECT_LT((right_resolvent(h, T, 0.8, xi, 1e-12).point - left_resolvent(h, T, 0.8, xi, 1e-12).point).norm(), 1e-10);
}

TEST(RightResolvent, KlDefiningEquation) {
  const auto s = SpaceDescriptor::vectors(3);
  const auto kl = make_kl(s);
  const Mat M = (Mat(3, 3) << 2, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 1.5).finished();
  const Vec xi = V({0.1, -0.5, 0.3});
  const Vec w = right_resolvent(kl, MonotoneMap::linear(M), 0.6, xi, 1e-12).point;
  EXPECT_LT((w + 0.6 * M * kl->conjugate_gradient(w) - xi).norm(), 1e-8);
}

TEST(Cyclic, DykstraTwoHalfspaces) {
  const auto s = SpaceDescriptor::vectors(2);
  const std::vector<ConvexSet> sets = {ConvexSet::halfspace(V({1, 0}), 0), ConvexSet::halfspace(V({0, 1}), 0)};
  const IterationTrace t = cyclic_project(make_hilbert(s), sets, V({1, 2}), CyclicMode::dykstra_hilbert, 200, 1e-12);
  EXPECT_TRUE(t.converged);
  EXPECT_LT(t.last().norm(), 1e-9);
  EXPECT_NE(t.csv().find('\n'), std::string::npos);
}

TEST(Cyclic, KlHyperplanesReachStackedProjection) {
  const auto s = SpaceDescriptor::vectors(3);
  const auto kl = make_kl(s);
  const std::vector<ConvexSet> sets = {ConvexSet::hyperplane(V({1, 1, 1}), 3), ConvexSet::hyperplane(V({1, -1, 0.5}), 0.5)};
  Mat A(2, 3);
  A << 1, 1, 1, 1, -1, 0.5;
  const Vec target = left_project(kl, ConvexSet::affine(A, V({3, 0.5})), V({2, 0.5, 1}), {1e-13}).point;
  const IterationTrace t = cyclic_project(kl, sets, V({2, 0.5, 1}), CyclicMode::naive_cyclic, 500, 1e-12, target);
  EXPECT_LT((t.last() - target).norm(), 1e-6);
  EXPECT_EQ(t.divergence_to_target.size(), t.points.size());
}

TEST(Certify, ProjectionIsLeftQuasinonexpansive) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto kl = make_kl(s);
  const ConvexSet K = ConvexSet::halfspace(V({1, 1}), 1);
  Rng rng(41);
  std::vector<Vec> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(rng.uniform_vec(2, 0.05, 3));
  const auto rep = certify_quasinonexpansive(kl, [&](const Vec& x) { return left_project(kl, K, x, {1e-12}).point; },
                                             {V({0.3, 0.3}), V({0.5, 0.5})}, xs);
  EXPECT_TRUE(rep.is_left_sq());
  EXPECT_LT(rep.fixed_point_error, 1e-10);
}
