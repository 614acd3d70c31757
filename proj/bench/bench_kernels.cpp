#include <benchmark/benchmark.h>

#include "dirac_lab/gagliardo.hpp"
#include "dirac_lab/modes.hpp"

using namespace dlab;

namespace {

const SpinorField& plus_mode() {
  static const SpinorField f = singular_mode(Sign::Plus, 1.5 * kPi, 1.0).field();
  return f;
}

void BM_inner(benchmark::State& st) {
  const SpinorField& f = plus_mode();
  GagliardoOptions o;
  for (auto _ : st) benchmark::DoNotOptimize(gagliardo_inner(f, f.support, 0.5, 0.5, 0.3, 2.0, o));
}
BENCHMARK(BM_inner)->Unit(benchmark::kMillisecond);

// arg 0 = serial reference, 1 = OpenMP kernel (DIRAC_LAB_THREADS caps it)
void BM_shell(benchmark::State& st) {
  const SpinorField& f = plus_mode();
  GagliardoOptions o;
  o.rel_tol = 1e-2;
  o.exec = st.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : st) benchmark::DoNotOptimize(gagliardo_shell(f, f.support, 0.5, 0.25, 0.5, o));
  st.counters["threads"] = st.range(0) ? kernel_threads() : 1;
}
BENCHMARK(BM_shell)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
