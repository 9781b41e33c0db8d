#include <benchmark/benchmark.h>

#include <random>

#include "nnicp/bench.hpp"
#include "nnicp/parser.hpp"
#include "nnicp/propagate.hpp"
#include "nnicp/random_instance.hpp"
#include "nnicp/sigmoid.hpp"

using namespace nnicp;

static void BM_SigmoidForward(benchmark::State& state) {
  const Interval x = Interval::closed(-5.8, 1.3);
  const Interval y = Interval::closed(0.08, 0.97);
  for (auto _ : state) benchmark::DoNotOptimize(fwd_prop_sigmoid(x, y));
}
BENCHMARK(BM_SigmoidForward);

static void BM_SigmoidBackward(benchmark::State& state) {
  const Interval x = Interval::closed(-5.8, 1.3);
  const Interval y = Interval::closed(0.08, 0.97);
  for (auto _ : state) benchmark::DoNotOptimize(bwd_prop_sigmoid(x, y));
}
BENCHMARK(BM_SigmoidBackward);

static void BM_Multiply(benchmark::State& state) {
  const Interval a = Interval::closed(-1.5, 2.25);
  const Interval b = Interval::closed(-0.3, 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(BM_Multiply);

// One full propagation of an n-ary sum over n+1 unit-interval terms.
static void BM_AffineSum(benchmark::State& state) {
  const auto sys = gen_sum(static_cast<int>(state.range(0)));
  Box box = sys.initial_box();
  box[sys.lookup("y")] = Interval::closed(0.25, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(sys.equations().front(), box));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AffineSum)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

static void BM_Balance(benchmark::State& state) {
  const auto text = gen_sum_text(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(balance_affine_sums(parse_system(text)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Balance)->RangeMultiplier(4)->Range(4, 4096)->Complexity()->Unit(benchmark::kMicrosecond);

static void BM_SolveRandom(benchmark::State& state) {
  const auto enc = static_cast<SigmoidEncoding>(state.range(0));
  const auto inst = random_instance(7);
  SigmoidOptions opts;
  opts.encoding = enc;
  const auto sys = inst.build(opts);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys).outcome);
  state.SetLabel(to_string(enc));
}
BENCHMARK(BM_SolveRandom)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
