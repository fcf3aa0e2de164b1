#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/divergence.hpp>
#include <bregproj/embeddings.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::V;

TEST(Bregman, Examples) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto h = make_gauge_potential(s, Gauge::power(1, 0.5));
  EXPECT_NEAR(bregman(*h, V({1, 0}), V({0, 1})), 1.0, 1e-15);
  EXPECT_NEAR(bregman(*make_kl(s), V({1, 2}), V({2, 1})), std::log(2.0), 1e-14);
  EXPECT_EQ(bregman(*make_burg(s), V({5, 7}), V({5, 7})), 0.0);
}

TEST(Bregman, ReportsDomainFlags) {
  const auto s = SpaceDescriptor::vectors(2);
  const DivergenceValue d = bregman(*make_kl(s), SpacePoint::vector(s, V({0, 1})), SpacePoint::vector(s, V({1, 1})));
  EXPECT_TRUE(d.left_in_domain);
  EXPECT_TRUE(d.right_in_interior);
  EXPECT_NEAR(d.value, 1.0, 1e-14);
}

TEST(Bregman, NonnegativeOnSamples) {
  Rng rng(12);
  const auto s = SpaceDescriptor::vectors(4);
  for (const auto& psi : {make_kl(s), make_burg(s), make_alpha(s, 0.5), make_fermi_dirac(s)}) {
    for (int i = 0; i < 200; ++i) {
      const Vec x = rng.uniform_vec(4, 0.01, 0.99), y = rng.uniform_vec(4, 0.01, 0.99);
      EXPECT_GE(bregman(*psi, x, y), -1e-12 * std::max(1.0, std::abs(psi->value(x))));
    }
  }
}

TEST(OneSided, Examples) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_EQ(one_sided_bregman(*make_kl(s), V({1, 1}), V({0, 1})), kInf);
  EXPECT_NEAR(one_sided_bregman(*make_kl(s), V({1, 2}), V({1, 2})), 0.0, 1e-12);
  const auto q = make_quadratic(s, (Mat(2, 2) << 2, 1, 1, 3).finished());
  EXPECT_NEAR(one_sided_bregman(*q, V({1, -1}), V({0.5, 2})), bregman(*q, V({1, -1}), V({0.5, 2})), 1e-9);
}

TEST(Identities, HoldForKl) {
  Rng rng(13);
  const auto s = SpaceDescriptor::vectors(3);
  const auto kl = make_kl(s);
  for (int i = 0; i < 50; ++i) {
    const IdentityReport r = identity_suite(*kl, rng.uniform_vec(3, 0.1, 2), rng.uniform_vec(3, 0.1, 2), rng.uniform_vec(3, 0.1, 2),
                                            rng.uniform_vec(3, 0.1, 2), 0.7, 1.3, rng.normal_vec(3));
    EXPECT_LT(r.max_residual(), 1e-10);
  }
}

TEST(PsiAngle, Examples) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto h = make_hilbert(s);
  EXPECT_NEAR(psi_angle(*h, V({1, 0}), V({0, 0}), V({0, 1})).angle, M_PI / 2, 1e-14);
  EXPECT_NEAR(psi_angle(*h, V({1, 0}), V({0, 0}), V({1, 0})).angle, std::acos(0.5), 1e-14);
  const AngleReport a = psi_angle(*make_kl(s), V({1, 2}), V({2, 1}), V({1, 2}));
  EXPECT_TRUE(std::isfinite(a.angle));
  EXPECT_GE(a.angle, 0.0);
  EXPECT_LE(a.angle, M_PI);
}

TEST(ExtendedBregman, IdentityEmbedding) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto kl = make_kl(s);
  EXPECT_NEAR(extended_bregman(Embedding::identity(s), *kl, V({1, 2}), V({2, 1})).value, std::log(2.0), 1e-14);
}
