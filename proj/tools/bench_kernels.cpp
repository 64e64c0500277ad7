// Compares the OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "logchow/matrix.hpp"

#include <random>

using namespace logchow;

namespace {

RatMatrix denseMatrix(int rows, int cols) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  RatMatrix m(rows, cols);
  for (auto &x : m.a)
    x = Rat(Int(num(rng)), Int(den(rng)));
  return m;
}

void rankBench(benchmark::State &state, Exec ex) {
  RatMatrix m = denseMatrix(static_cast<int>(state.range(0)),
                            static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(rank(m, ex));
}

} // namespace

BENCHMARK_CAPTURE(rankBench, serial, Exec::Serial)->Arg(60)->Arg(120);
BENCHMARK_CAPTURE(rankBench, parallel, Exec::Parallel)->Arg(60)->Arg(120);

BENCHMARK_MAIN();
