#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/error.hpp>
#include <bregproj/gauges.hpp>
#include <bregproj/random.hpp>
#include <bregproj/spaces.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::diag;
using fixtures::mat2;
using fixtures::V;

TEST(Pairing, DotProduct) { EXPECT_DOUBLE_EQ(pairing(V({1, 2}), V({3, -1})), 1.0); }

TEST(Pairing, TracePairing) {
  const auto s = SpaceDescriptor::hermitian(2);
  EXPECT_NEAR(pairing(SpacePoint::matrix(s, diag({1, 1})), SpacePoint::matrix(s, diag({2.5, -4}))), -1.5, 1e-14);
}

TEST(Pairing, DualityMapOnL4) {
  const auto s = SpaceDescriptor::vectors(2, NormSpec::lp(4));
  const Vec x = V({1, 1});
  const SpacePoint j = duality_map(s, Gauge::identity(), SpacePoint::vector(s, x));
  EXPECT_NEAR(pairing(x, j.coords()), std::sqrt(2.0), 1e-14);
}

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(norm(SpaceDescriptor::vectors(2), V({3, 4})), 5.0);
  // Schatten-1 is rejected as a norm (p must exceed 1); its value is the trace of the modulus.
  EXPECT_THROW(NormSpec::schatten(1), ValidationError);
  EXPECT_NEAR(polar_decompose(diag({1, -2})).modulus.trace().real(), 3.0, 1e-14);
  EXPECT_NEAR(norm(SpaceDescriptor::hermitian(2, NormSpec::schatten(1.0 + 1e-9)), flatten_hermitian(diag({1, -2}))), 3.0, 1e-8);
  EXPECT_NEAR(norm(SpaceDescriptor::vectors(2, NormSpec::lp(4)), V({1, 1})), 1.189207115, 1e-9);
}

TEST(Norm, HolderPairingBound) {
  Rng rng(3);
  for (const auto& s : {SpaceDescriptor::vectors(5, NormSpec::lp(3)), SpaceDescriptor::vectors(4, NormSpec::block(3, 1.5, 2)),
                        SpaceDescriptor::hermitian(3, NormSpec::schatten(1.5))}) {
    for (int i = 0; i < 200; ++i) {
      const Vec x = s.is_matrix() ? flatten_hermitian(rng.hermitian(s.n)) : rng.normal_vec(s.n);
      const Vec y = s.is_matrix() ? flatten_hermitian(rng.hermitian(s.n)) : rng.normal_vec(s.n);
      EXPECT_LE(std::abs(pairing(x, y)), norm(s, x) * dual_norm(s, y) * (1 + 1e-12));
    }
  }
}

TEST(Norm, GradientAttainsPairing) {
  Rng rng(5);
  const auto s = SpaceDescriptor::vectors(4, NormSpec::weighted(3, V({1, 2, 0.5, 1})));
  for (int i = 0; i < 50; ++i) {
    const Vec x = rng.normal_vec(4);
    const Vec g = norm_gradient(s, x);
    EXPECT_NEAR(pairing(x, g), norm(s, x), 1e-12);
    EXPECT_NEAR(dual_norm(s, g), 1.0, 1e-12);
  }
}

TEST(DualNormSpec, ConjugateExponents) {
  EXPECT_DOUBLE_EQ(dual_norm_spec(NormSpec::lp(4)).p, 4.0 / 3.0);
  EXPECT_EQ(dual_norm_spec(NormSpec::schatten(2)), NormSpec::schatten(2));
  const NormSpec b = dual_norm_spec(NormSpec::block(3, 1.5, 2));
  EXPECT_DOUBLE_EQ(b.p, 1.5);
  EXPECT_DOUBLE_EQ(b.q, 3.0);
  EXPECT_EQ(dual_norm_spec(dual_norm_spec(NormSpec::lp(1.7))), NormSpec::lp(1.7));
}

TEST(Polar, Examples) {
  const PolarParts a = polar_decompose(diag({2, -3}));
  EXPECT_LT((a.sign - diag({1, -1})).norm(), 1e-14);
  EXPECT_LT((a.modulus - diag({2, 3})).norm(), 1e-14);
  const CMat sw = mat2(0, 1, 1, 0);
  const PolarParts b = polar_decompose(sw);
  EXPECT_LT((b.modulus - CMat::Identity(2, 2)).norm(), 1e-14);
  EXPECT_LT((b.sign - sw).norm(), 1e-14);
  const PolarParts c = polar_decompose(mat2(2, 1, 1, 2));
  EXPECT_LT((c.sign - CMat::Identity(2, 2)).norm(), 1e-14);
}

TEST(Polar, Reconstructs) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const CMat x = rng.hermitian(4);
    const PolarParts p = polar_decompose(x);
    EXPECT_LT((p.sign * p.modulus - x).norm(), 1e-12);
  }
}

TEST(EigenSorted, Examples) {
  EXPECT_LT((eigen_sorted(diag({1, 3})).values - V({3, 1})).norm(), 1e-14);
  EXPECT_LT((eigen_sorted(CMat(CMat::Identity(2, 2))).values - V({1, 1})).norm(), 1e-14);
  EXPECT_LT((eigen_sorted(mat2(2, 1, 1, 2)).values - V({3, 1})).norm(), 1e-14);
}

TEST(Hermitian, FlatCoordinatesAreIsometric) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const CMat a = rng.hermitian(3), b = rng.hermitian(3);
    EXPECT_NEAR(flatten_hermitian(a).dot(flatten_hermitian(b)), (a * b).trace().real(), 1e-12);
    EXPECT_LT((unflatten_hermitian(flatten_hermitian(a), 3) - a).norm(), 1e-14);
  }
}

TEST(Hermitian, RejectsNonHermitian) { EXPECT_THROW(require_hermitian(mat2(1, 2, 0, 1)), ValidationError); }

TEST(Space, ValidateRejectsBadExponent) {
  EXPECT_THROW(SpaceDescriptor::vectors(2, NormSpec::lp(1.0)).validate(), Error);
  EXPECT_THROW(SpaceDescriptor::vectors(0).validate(), Error);
}
