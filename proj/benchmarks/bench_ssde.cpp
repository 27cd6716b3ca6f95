#include "ssde/analysis.hpp"
#include "ssde/solver.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

ssde::Piecemealing chart() {
  using ssde::Number;
  using ssde::Rational;
  return ssde::validate(Number(Rational(1)), Number(Rational(4)),
                        {{Rational(1, 3), Rational(2, 3), Rational(2, 3), Rational(-22, 15)},
                         {Rational(2, 3), Rational(-1, 6), Rational(4, 3), Rational(17, 6)}});
}

void BM_Apply(benchmark::State& state) {
  const auto p = ssde::transition_piecemealing();
  const auto y = ssde::sample_on(p, [](double x) { return std::sin(x); },
                                 static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ssde::apply(p, y));
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_Apply)->RangeMultiplier(4)->Range(128, 8192);

void BM_PicardStep(benchmark::State& state) {
  const ssde::SsdeProblem prob{chart(), 1, ssde::Number(ssde::Rational(1)), {}, {}};
  const auto y = ssde::sample_on(prob.piecemealing, [](double) { return 3.0; },
                                 static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ssde::picard_step(prob, y));
}
BENCHMARK(BM_PicardStep)->RangeMultiplier(4)->Range(128, 8192);

void BM_SolveSystemExact(benchmark::State& state) {
  const auto p = chart();
  for (auto _ : state) benchmark::DoNotOptimize(ssde::solve_system(p, ssde::Rational(1)));
}
BENCHMARK(BM_SolveSystemExact);

void BM_SolveTransition(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ssde::solve_transition(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SolveTransition)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
