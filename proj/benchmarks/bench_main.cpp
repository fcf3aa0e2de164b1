#include <benchmark/benchmark.h>

#include <bregproj/divergence.hpp>
#include <bregproj/embeddings.hpp>
#include <bregproj/operators.hpp>
#include <bregproj/projections.hpp>
#include <bregproj/random.hpp>

using namespace bregproj;

namespace {

Vec positive(Rng& rng, int n) {
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = std::exp(rng.uniform(-1, 1));
  return x;
}

void BM_KlDivergence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto kl = make_kl(SpaceDescriptor::vectors(n));
  const Vec x = positive(rng, n), y = positive(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(kl->divergence(x, y));
}
BENCHMARK(BM_KlDivergence)->Arg(4)->Arg(64)->Arg(1024);

void BM_UmegakiDivergence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto kl = make_kl(SpaceDescriptor::hermitian(n));
  const Vec x = flatten_hermitian(rng.density(n)), y = flatten_hermitian(rng.density(n));
  for (auto _ : state) benchmark::DoNotOptimize(kl->divergence(x, y));
}
BENCHMARK(BM_UmegakiDivergence)->Arg(2)->Arg(4)->Arg(16);

void BM_GaugeDualityMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const auto psi = make_gauge_potential(SpaceDescriptor::vectors(n, NormSpec::lp(4)), Gauge::power(1, 0.25));
  const Vec x = rng.normal_vec(n);
  for (auto _ : state) benchmark::DoNotOptimize(psi->gradient(x));
}
BENCHMARK(BM_GaugeDualityMap)->Arg(8)->Arg(256);

void BM_LeftProjectSimplexKl(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const auto kl = make_kl(SpaceDescriptor::vectors(n));
  const ConvexSet K = ConvexSet::simplex(n, 1.0);
  const Vec y = positive(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(left_project(kl, K, y).point);
}
BENCHMARK(BM_LeftProjectSimplexKl)->Arg(4)->Arg(32);

void BM_LeftProjectHalfspaceL4(benchmark::State& state) {
  Rng rng(5);
  const auto psi = make_gauge_potential(SpaceDescriptor::vectors(8, NormSpec::lp(4)), Gauge::power(1, 0.25));
  const ConvexSet K = ConvexSet::halfspace(rng.unit_vec(8), 0.0);
  const Vec y = 2.0 * rng.normal_vec(8);
  for (auto _ : state) benchmark::DoNotOptimize(left_project(psi, K, y).point);
}
BENCHMARK(BM_LeftProjectHalfspaceL4);

void BM_RightProjectKl(benchmark::State& state) {
  Rng rng(6);
  const auto kl = make_kl(SpaceDescriptor::vectors(3));
  const ConvexSet K = ConvexSet::halfspace((Vec(3) << 1, -1, 0.5).finished(), -0.2).in_dual();
  const Vec y = positive(rng, 3);
  for (auto _ : state) benchmark::DoNotOptimize(right_project(kl, K, y).point);
}
BENCHMARK(BM_RightProjectKl);

void BM_LeftResolventKl(benchmark::State& state) {
  Rng rng(7);
  const auto kl = make_kl(SpaceDescriptor::vectors(3));
  const Mat M = (Mat(3, 3) << 2, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 1.5).finished();
  const MonotoneMap T = MonotoneMap::linear(M);
  const Vec x = positive(rng, 3);
  for (auto _ : state) benchmark::DoNotOptimize(left_resolvent(kl, T, 0.7, x).point);
}
BENCHMARK(BM_LeftResolventKl);

void BM_DykstraTwoHalfspaces(benchmark::State& state) {
  const auto h = make_hilbert(SpaceDescriptor::vectors(2));
  const std::vector<ConvexSet> sets = {ConvexSet::halfspace((Vec(2) << 1, 0.2).finished(), 0),
                                       ConvexSet::halfspace((Vec(2) << -0.3, 1).finished(), 0)};
  const Vec y = (Vec(2) << 1, 2).finished();
  for (auto _ : state)
    benchmark::DoNotOptimize(cyclic_project(h, sets, y, CyclicMode::dykstra_hilbert, 200, 1e-12).last());
}
BENCHMARK(BM_DykstraTwoHalfspaces);

void BM_DGamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(8);
  const auto s = SpaceDescriptor::hermitian(n);
  const Vec r = flatten_hermitian(rng.density(n)), q = flatten_hermitian(rng.density(n));
  for (auto _ : state) benchmark::DoNotOptimize(d_gamma(s, r, q, 0.5));
}
BENCHMARK(BM_DGamma)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
