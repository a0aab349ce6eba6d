#include "varest/diffseq.hpp"
#include "varest/estimator.hpp"
#include "varest/scenario.hpp"
#include "varest/smoother.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace varest;

namespace {

std::vector<double> unit_grid(int points)
{
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = static_cast<double>(i) / (points - 1);
  return g;
}

void BM_FitAt(benchmark::State& state)
{
  const auto s = generate_sample(default_smooth_scenario(static_cast<std::size_t>(state.range(0))), 1);
  const SmootherConfig cfg{ {}, static_cast<int>(state.range(1)), 0.1, false };
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_at(s.xs(), s.ys(), cfg, 0.5));
}
BENCHMARK(BM_FitAt)->ArgsProduct({ { 1 << 10, 1 << 14 }, { 1, 3 } });

void BM_PseudoresidualSquares(benchmark::State& state)
{
  const auto s = generate_sample(default_smooth_scenario(static_cast<std::size_t>(state.range(0))), 2);
  const auto seq = optimal_sequence(static_cast<int>(state.range(1)));
  std::vector<double> out(s.size() - seq.order());
  for (auto _ : state) {
    pseudoresidual_squares(s.ys(), seq, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_PseudoresidualSquares)->ArgsProduct({ { 1 << 12, 1 << 16 }, { 2, 6 } });

void BM_OptimalSequence(benchmark::State& state)
{
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_sequence(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OptimalSequence)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_LinearPlanApply(benchmark::State& state)
{
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto s = generate_sample(default_smooth_scenario(n), 3);
  const auto seq = optimal_sequence(2);
  std::vector<double> sq(n - seq.order()), centers(n - seq.order()), out(101);
  pseudoresidual_squares(s.ys(), seq, sq);
  for (std::size_t k = 0; k < centers.size(); ++k)
    centers[k] = s.xs()[k + 1];
  const LinearPlan plan(centers, SmootherConfig{ {}, 1, 0.1, false }, unit_grid(101));
  for (auto _ : state) {
    plan.apply(sq, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LinearPlanApply)->Arg(1 << 12)->Arg(1 << 16);

} // namespace

BENCHMARK_MAIN();
