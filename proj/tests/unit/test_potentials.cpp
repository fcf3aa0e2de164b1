#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/error.hpp>
#include <bregproj/metrology.hpp>
#include <bregproj/potentials.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::diag;
using fixtures::mat2;
using fixtures::V;

namespace {
const double e = std::exp(1.0);
}

TEST(Eval, Kl) {
  const auto s = SpaceDescriptor::vectors(2);
  const PotentialEval r = make_kl(s)->eval(SpacePoint::vector(s, V({1, e})));
  EXPECT_NEAR(r.value, -1.0, 1e-14);
  ASSERT_TRUE(r.gradient.has_value());
  EXPECT_LT((r.gradient->coords() - V({0, 1})).norm(), 1e-14);
}

TEST(Eval, BurgOutsideDomain) {
  const auto s = SpaceDescriptor::vectors(2);
  const PotentialEval r = make_burg(s)->eval(SpacePoint::vector(s, V({1, 0})));
  EXPECT_EQ(r.value, kInf);
  EXPECT_FALSE(r.gradient.has_value());
}

TEST(Eval, Quadratic) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto q = make_quadratic(s, 2 * Mat::Identity(2, 2));
  const PotentialEval r = q->eval(SpacePoint::vector(s, V({1, 1})));
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_LT((r.gradient->coords() - V({2, 2})).norm(), 1e-15);
  // 1/2 <T^{-1} y, y> = 1/2 <(1,1), (2,2)> = 2
  EXPECT_NEAR(q->conjugate_value(V({2, 2})), 2.0, 1e-15);
}

TEST(ConjugateEval, PaperExamples) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_NEAR(make_kl(s)->conjugate_value(V({0, 0})), 2.0, 1e-15);
  EXPECT_NEAR(make_burg(s)->conjugate_value(V({-1, -1})), -2.0, 1e-15);
  EXPECT_FALSE(make_burg(s)->conjugate_in_interior(V({1, -1})));
}

TEST(SpectralLift, Examples) {
  const auto m = SpaceDescriptor::hermitian(2);
  EXPECT_NEAR(spectral_lift(make_kl(SpaceDescriptor::vectors(2)))->value(flatten_hermitian(diag({1, e}))), -1.0, 1e-13);
  EXPECT_EQ(make_burg(m)->value(flatten_hermitian(diag({1, 0}))), kInf);
  EXPECT_NEAR(spectral_lift(make_power_sum(SpaceDescriptor::vectors(2), 0.5))->value(flatten_hermitian(mat2(2, 1, 1, 2))),
              5.0, 1e-12);
}

TEST(SpectralLift, GradientIsSpectral) {
  Rng rng(8);
  const auto m = SpaceDescriptor::hermitian(3);
  const auto kl = make_kl(m);
  const CMat x = rng.positive_definite(3, 0.2, 2.0);
  const CMat g = unflatten_hermitian(kl->gradient(flatten_hermitian(x)), 3);
  EXPECT_LT((g - spectral_apply(x, [](double t) { return std::log(t); })).norm(), 1e-12);
}

TEST(Legendre, GradientsInvertEachOther) {
  Rng rng(9);
  const auto s = SpaceDescriptor::vectors(3);
  for (const auto& psi : {make_kl(s), make_burg(s), make_fermi_dirac(s), make_alpha(s, 0.5), make_alpha(s, -1),
                          make_power_sum(s, 1.0 / 3.0), make_squared_pnorm(s, 1.0 / 3.0)}) {
    for (int i = 0; i < 20; ++i) {
      Vec x(3);
      for (int k = 0; k < 3; ++k) x[k] = rng.uniform(0.05, 0.95);
      ASSERT_TRUE(psi->in_interior(x)) << psi->name();
      EXPECT_LT((psi->conjugate_gradient(psi->gradient(x)) - x).norm(), 1e-9) << psi->name();
      EXPECT_LT(gradient_check(*psi, {x}), 1e-6) << psi->name();
    }
  }
}

TEST(ConjugateView, SwapsRoles) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto kl = make_kl(s);
  const auto cv = conjugate_view(kl);
  const Vec y = V({0.3, -0.2});
  EXPECT_DOUBLE_EQ(cv->value(y), kl->conjugate_value(y));
  EXPECT_LT((cv->conjugate_gradient(kl->conjugate_gradient(y)) - y).norm(), 1e-14);
}

TEST(Combination, ValueAndGradient) {
  const auto s = SpaceDescriptor::vectors(2);
  const auto c = make_combination(make_kl(s), 2.0, make_hilbert(s), 0.5, V({1, -1}), 3.0);
  const Vec x = V({0.5, 2});
  EXPECT_NEAR(c->value(x), 2 * make_kl(s)->value(x) + 0.25 * x.squaredNorm() + x.dot(V({1, -1})) + 3, 1e-14);
  EXPECT_LT(gradient_check(*c, {x}), 1e-7);
}

TEST(Factories, RejectInvalidParameters) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_THROW(make_alpha(s, 1.0), Error);
  EXPECT_THROW(make_power_sum(s, 1.0), Error);
  EXPECT_THROW(make_quadratic(s, -Mat::Identity(2, 2)), Error);
}
