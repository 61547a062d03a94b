#include <benchmark/benchmark.h>

#include <memory>

#include "ncmult/convexbody.hpp"
#include "ncmult/fourier.hpp"
#include "ncmult/groups.hpp"
#include "ncmult/heisenberg.hpp"
#include "ncmult/positivity.hpp"
#include "ncmult/symbols.hpp"

using namespace ncmult;

static void BM_FreeBall(benchmark::State& state) {
  const auto G = GroupSpec::free(2);
  for (auto _ : state) benchmark::DoNotOptimize(ball(G, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_FreeBall)->Arg(6)->Arg(8)->Arg(10);

static void BM_HeisenbergBall(benchmark::State& state) {
  const auto G = GroupSpec::heisenberg3();
  for (auto _ : state) benchmark::DoNotOptimize(ball(G, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_HeisenbergBall)->Arg(6)->Arg(10);

static void BM_HeisenbergTable(benchmark::State& state) {
  for (auto _ : state) {
    HeisenbergBallTable T(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(T.ball_size(T.max_radius()));
  }
}
BENCHMARK(BM_HeisenbergTable)->Arg(16)->Arg(32);

static void BM_FejerCountsHashed(benchmark::State& state) {
  const auto G = GroupSpec::free(2);
  const auto domain = ball(G, 4);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FejerField field(domain, BallOptions{}, N);
    benchmark::DoNotOptimize(field.counts(N).data());
  }
}
BENCHMARK(BM_FejerCountsHashed)->Arg(4)->Arg(6);

static void BM_FejerCountsTable(benchmark::State& state) {
  const auto G = GroupSpec::heisenberg3();
  const auto domain = ball(G, 8);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FejerField field(domain, BallOptions{}, N);
    benchmark::DoNotOptimize(field.counts(N).data());
  }
}
BENCHMARK(BM_FejerCountsTable)->Arg(16)->Arg(32);

static void BM_FejerPositivity(benchmark::State& state) {
  const auto G = GroupSpec::free(2);
  const auto B = ball(G, 3);
  const auto m = memoize([G](const GroupElement& g) { return fejer_symbol(G, BallFamily::word, 2, g).to_double(); });
  for (auto _ : state) benchmark::DoNotOptimize(is_positive_definite(m, B).min_eigenvalue);
}
BENCHMARK(BM_FejerPositivity);

static void BM_MaximalExperiment(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_maximal_experiment(n, 1, 2, 4, 1).max_ratio);
}
BENCHMARK(BM_MaximalExperiment)->Arg(64)->Arg(256);

static void BM_LqSampler(benchmark::State& state) {
  const auto B = BodySpec::lq(4, static_cast<int>(state.range(0)));
  std::vector<double> out;
  std::uint64_t block = 0;
  for (auto _ : state) {
    sample_block(B, 1, block++, 16384, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 16384);
}
BENCHMARK(BM_LqSampler)->Arg(4)->Arg(16);

static void BM_BallTransform(benchmark::State& state) {
  const auto B = BodySpec::ball(static_cast<int>(state.range(0)));
  std::vector<double> xi(static_cast<std::size_t>(B.d), 0.0);
  xi[0] = 2.5;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_body(B, {xi}, 4).front().value.value);
}
BENCHMARK(BM_BallTransform)->Arg(3)->Arg(16);
BENCHMARK_MAIN();
