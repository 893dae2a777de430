#include <benchmark/benchmark.h>

#include "kforge/twist.hpp"
#include "kforge/weyl.hpp"

using namespace kforge;

namespace {

// (1 + sum_mu x^mu d_mu + a d0)^k, a dense operator with many terms.
DiffOp dense_op(int dim, int order, int power) {
  Generators g(dim, order);
  DiffOp base = g.one() + g.trace() + g.A();
  DiffOp out = g.one();
  for (int k = 0; k < power; ++k)
    out = mul_serial(out, base);
  return out;
}

void BM_DiffOpSerial(benchmark::State &st) {
  const DiffOp a = dense_op(4, 4, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(mul_serial(a, a));
  st.counters["terms"] = static_cast<double>(a.size());
}

void BM_DiffOpParallel(benchmark::State &st) {
  const DiffOp a = dense_op(4, 4, static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(mul_parallel(a, a));
  st.counters["terms"] = static_cast<double>(a.size());
}

void BM_TensorSerial(benchmark::State &st) {
  const Twist t(TwistSpec::jordanian(-1, 4, static_cast<int>(st.range(0))));
  for (auto _ : st)
    benchmark::DoNotOptimize(tensor_mul_serial(t.tensor(), t.inverse()));
}

void BM_TensorParallel(benchmark::State &st) {
  const Twist t(TwistSpec::jordanian(-1, 4, static_cast<int>(st.range(0))));
  for (auto _ : st)
    benchmark::DoNotOptimize(tensor_mul_parallel(t.tensor(), t.inverse()));
}

} // namespace

BENCHMARK(BM_DiffOpSerial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffOpParallel)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorSerial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorParallel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
