#include <gtest/gtest.h>

#include <cmath>

#include <bregproj/error.hpp>
#include <bregproj/gauges.hpp>
#include <bregproj/random.hpp>

#include "helpers.hpp"

using namespace bregproj;
using fixtures::V;

TEST(PsiPhi, Examples) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_DOUBLE_EQ(psi_phi_value(s, Gauge::power(1, 0.5), SpacePoint::vector(s, V({3, 4}))), 12.5);
  const auto s4 = SpaceDescriptor::vectors(2, NormSpec::lp(4));
  EXPECT_EQ(psi_phi_value(s4, Gauge::power(1, 0.25), SpacePoint::vector(s4, V({0, 0}))), 0.0);
}

TEST(PsiPhi, MinOneQuasigauge) {
  const auto s = SpaceDescriptor::vectors(2);
  const Quasigauge q(MonotoneGraph({{0, 0}, {1, 1}}, 0.0), true);
  EXPECT_NEAR(psi_phi_value(s, q, SpacePoint::vector(s, V({2, 0}))), 1.5, 1e-14);
}

TEST(PsiPhi, PowerGaugeClosedForm) {
  // Psi = beta ||x||^{1/beta} / alpha
  const auto s = SpaceDescriptor::vectors(3, NormSpec::lp(3));
  const Vec x = V({0.3, -1.2, 2});
  const double r = norm(s, x);
  EXPECT_NEAR(psi_phi_value(s, Gauge::power(2, 0.25), SpacePoint::vector(s, x)), 0.25 * std::pow(r, 4) / 2, 1e-12);
}

TEST(DualityMap, L4Example) {
  const auto s = SpaceDescriptor::vectors(2, NormSpec::lp(4));
  const Vec j = duality_map(s, Gauge::identity(), SpacePoint::vector(s, V({1, 1}))).coords();
  EXPECT_LT((j - V({1, 1}) / std::sqrt(2.0)).norm(), 1e-14);
}

TEST(DualityMap, DefiningIdentities) {
  Rng rng(4);
  for (const auto& s : {SpaceDescriptor::vectors(4, NormSpec::lp(1.5)), SpaceDescriptor::vectors(4, NormSpec::block(3, 1.5, 2)),
                        SpaceDescriptor::hermitian(3, NormSpec::schatten(3))}) {
    const Gauge g = Gauge::power(1.3, 0.4);
    const GaugePotentialCore core(s, g);
    for (int i = 0; i < 50; ++i) {
      const Vec x = s.is_matrix() ? flatten_hermitian(rng.hermitian(s.n)) : rng.normal_vec(s.n);
      const Vec j = core.duality_map(x);
      const double r = norm(s, x);
      EXPECT_NEAR(pairing(x, j), r * g(r), 1e-10 * std::max(1.0, r * g(r)));
      EXPECT_NEAR(dual_norm(s, j), g(r), 1e-10 * std::max(1.0, g(r)));
      EXPECT_LT((core.conjugate_duality_map(j) - x).norm(), 1e-9 * std::max(1.0, x.norm()));
    }
  }
}

TEST(Conjugate, FenchelYoungAndZero) {
  const auto s = SpaceDescriptor::vectors(3, NormSpec::lp(4));
  const Gauge g = Gauge::power(1, 0.25);
  EXPECT_EQ(psi_phi_conjugate(s, g, SpacePoint::vector(s, V({0, 0, 0}))), 0.0);
  const GaugePotentialCore core(s, g);
  const Vec x = V({0.5, -1, 2});
  EXPECT_NEAR(core.value(x) + core.conjugate(core.duality_map(x)), pairing(x, core.duality_map(x)), 1e-12);
}

TEST(GeneralizedInverse, ContinuousGauge) {
  const Quasigauge q = Quasigauge::from_gauge(Gauge::tabulated({{0, 0}, {1, 1}, {2, 4}}, 4.0));
  const InverseImages inv = generalized_inverses(q);
  for (double s : {0.5, 1.0, 2.5, 4.0, 10.0}) EXPECT_NEAR(inv.left(s), inv.right(s), 1e-14);
}

TEST(GeneralizedInverse, FlatSegment) {
  const Quasigauge q(MonotoneGraph({{0, 0}, {1, 1}, {2, 1}}, 1.0), true);
  const InverseImages inv = generalized_inverses(q);
  EXPECT_DOUBLE_EQ(inv.left(1.0), 1.0);
  EXPECT_DOUBLE_EQ(inv.right(1.0), 2.0);
}

TEST(GeneralizedInverse, PowerGauge) {
  const Gauge g = Gauge::monomial(3);  // t^2
  for (double s : {0.25, 1.0, 9.0}) EXPECT_NEAR(g.inverse_value(s), std::sqrt(s), 1e-14);
}

TEST(ConjugateLemma, Examples) {
  const ConjugateCheck a = conjugate_integral_check(Gauge::identity(), 3.0, 1e-4);
  EXPECT_NEAR(a.lhs, 4.5, 1e-6);
  EXPECT_NEAR(a.rhs, 4.5, 1e-12);
  const ConjugateCheck b = conjugate_integral_check(Quasigauge::step(1.0, 2.0, true), 1.0, 1e-4);
  EXPECT_NEAR(b.lhs, 1.0, 1e-4);
  EXPECT_NEAR(b.rhs, 1.0, 1e-4);
  const ConjugateCheck c = conjugate_integral_check(Gauge::power(1, 0.25), 2.0, 1e-4);
  EXPECT_NEAR(c.rhs, 0.75 * std::pow(2.0, 4.0 / 3.0), 1e-10);
  EXPECT_LE(c.residual, 1e-4);
}

TEST(Gauge, RejectsInvalid) {
  EXPECT_THROW(Gauge::power(-1, 0.5), Error);
  EXPECT_THROW(Gauge::tabulated({{0, 0}, {1, 1}, {2, 1}}, 1.0), Error);
  EXPECT_THROW(Gauge::tabulated({{0, 0}, {1, 1}}, 0.0), Error);
}

TEST(Quasigauge, DualityMapIsSetValued) {
  const auto s = SpaceDescriptor::vectors(2);
  EXPECT_THROW(duality_map(s, Quasigauge::step(1, 2, true), SpacePoint::vector(s, V({1, 0}))), UnsupportedOperation);
}
