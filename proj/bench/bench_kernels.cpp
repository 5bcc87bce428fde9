// Parallel kernels against their serial references, plus AS vs BSGS
// evaluation at the benchmark CM point.
#include <benchmark/benchmark.h>

#include "etatheta/bsgs.hpp"
#include "etatheta/evaluator.hpp"
#include "etatheta/modcount.hpp"
#include "etatheta/theorems.hpp"

using namespace etatheta;

namespace {

Execution exec_of(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_TheoremSweep(benchmark::State& state) {
  for (auto _ : state) {
    auto r = verify_decomposition(ExponentKind::AlmostSquare, DecompForm::DoubleAdd, 20000000, exec_of(state));
    benchmark::DoNotOptimize(r.checked);
  }
}
BENCHMARK(BM_TheoremSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PrimeDensity(benchmark::State& state) {
  const Quadratic f{18, -6, 1};  // 12 c + 1 at c = n(3n-1)/2
  for (auto _ : state) benchmark::DoNotOptimize(prime_density(f, 200000, exec_of(state)).prime_count);
}
BENCHMARK(BM_PrimeDensity)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PentagonalCounts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pentagonal_optimized_counts(100000, exec_of(state)).total());
}
BENCHMARK(BM_PentagonalCounts)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MinimaSieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(successive_minima(ExponentKind::Square, 1000000).entries.size());
}
BENCHMARK(BM_MinimaSieve)->Unit(benchmark::kMillisecond);

void BM_MinimaReference(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(successive_minima_reference(ExponentKind::Square, 1000000).entries.size());
  }
}
BENCHMARK(BM_MinimaReference)->Unit(benchmark::kMillisecond);

Complex cm_tau(mpfr_prec_t p) {
  Complex t(p);
  mpfr_set_si(t.re.get(), -1523, MPFR_RNDN);
  mpfr_div_ui(t.re.get(), t.re.get(), 2610, MPFR_RNDN);
  mpfr_sqrt_ui(t.im.get(), 6961631, MPFR_RNDN);
  mpfr_div_ui(t.im.get(), t.im.get(), 2610, MPFR_RNDN);
  return t;
}

void eval_bench(benchmark::State& state, Function f, Method m) {
  EvalRequest r;
  r.function = f;
  r.method = m;
  r.prec = state.range(0);
  r.tau = cm_tau(r.prec + 96);
  for (auto _ : state) benchmark::DoNotOptimize(eval(r).T);
}

void BM_EtaAS(benchmark::State& s) { eval_bench(s, Function::Eta, Method::OptimizedAS); }
void BM_EtaBSGS(benchmark::State& s) { eval_bench(s, Function::Eta, Method::BSGS); }
void BM_ThetaAllAS(benchmark::State& s) { eval_bench(s, Function::ThetaAll, Method::OptimizedAS); }
void BM_ThetaAllBSGS(benchmark::State& s) { eval_bench(s, Function::ThetaAll, Method::BSGS); }
BENCHMARK(BM_EtaAS)->ArgName("bits")->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EtaBSGS)->ArgName("bits")->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaAllAS)->ArgName("bits")->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaAllBSGS)->ArgName("bits")->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
