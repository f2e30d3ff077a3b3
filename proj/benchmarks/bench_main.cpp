#include <benchmark/benchmark.h>

#include "metabel/burnside.hpp"

using namespace metabel;

namespace {

void BM_PolyMultiply(benchmark::State& state) {
  const Ring ring = Ring::of(2, true);
  const LaurentPoly a = poly_pow(LaurentPoly::parse("1 - x + 2*y*t - x^-1*y^2", ring), static_cast<unsigned>(state.range(0)));
  const LaurentPoly b = poly_pow(LaurentPoly::parse("3 + x*y - t^-1 + y^-1", ring), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["terms"] = static_cast<double>(a.size() * b.size());
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(8)->Arg(16);

void BM_DecideSigmaPower(benchmark::State& state) {
  const auto q = state.range(0);
  const ExponentSpec exps = ExponentSpec::from_q(q);
  const IdealSpec spec = IdealSpec::cyclotomic(q, 2);
  const std::vector<int> alpha{static_cast<int>(exps.ephi) / 2, static_cast<int>(exps.ephi - exps.ephi / 2)};
  const LaurentPoly target = sigma_monomial(spec.ring(), alpha);
  const Budget budget = Budget::defaults(exps);
  for (auto _ : state) benchmark::DoNotOptimize(decide(target, spec, budget));
}
BENCHMARK(BM_DecideSigmaPower)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EvalWord(benchmark::State& state) {
  WordSampler ws(7);
  const GroupWord w = ws.derived(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_word(w, 2, true));
  state.counters["letters"] = static_cast<double>(w.length());
}
BENCHMARK(BM_EvalWord)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SecondDerivedPower(benchmark::State& state) {
  const auto q = state.range(0);
  const GroupWord w = sample_subgroup_element({StratumKind::Derived, 2}, 0);
  const MatPoly m = eval_word(w, 2, true);
  for (auto _ : state) benchmark::DoNotOptimize(m.pow(static_cast<unsigned>(q)));
}
BENCHMARK(BM_SecondDerivedPower)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Expand(benchmark::State& state) {
  const GroupWord w = sample_subgroup_element({StratumKind::Derived, 3}, 0);
  for (auto _ : state) benchmark::DoNotOptimize(expand(w, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Expand)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OrderInFS(benchmark::State& state) {
  const auto q = state.range(0);
  WordSampler ws(3);
  const GroupWord w = ws.random_word(12);
  const Budget budget = Budget::defaults(ExponentSpec::from_q(q));
  for (auto _ : state) benchmark::DoNotOptimize(order_in_FS(w, q, budget));
}
BENCHMARK(BM_OrderInFS)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
