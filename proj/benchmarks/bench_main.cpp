#include <benchmark/benchmark.h>

#include "eamp/datagen.hpp"
#include "eamp/linalg.hpp"
#include "eamp/solvers.hpp"
#include "eamp/stability.hpp"

using namespace eamp;

namespace {

InstanceSpec spec_for(std::size_t n) {
  InstanceSpec spec;
  spec.n = n;
  spec.N = 2 * n;
  spec.seed = 12;
  return spec;
}

void bm_step(benchmark::State& state) {
  const GeneratedInstance gen = make_instance(spec_for(static_cast<std::size_t>(state.range(0))));
  const double e = default_e(gen.problem);
  EampState st = zero_init(gen.problem);
  for (auto _ : state) {
    st = eamp_step(st, gen.problem, e);
    benchmark::DoNotOptimize(st.x.data());
  }
}
BENCHMARK(bm_step)->Arg(100)->Arg(500)->Arg(1000);

void bm_solve(benchmark::State& state) {
  const GeneratedInstance gen = make_instance(spec_for(static_cast<std::size_t>(state.range(0))));
  SolveConfig cfg;
  cfg.e = default_e(gen.problem);
  cfg.kkt_tol = 1e-6;
  cfg.record_trace = false;
  for (auto _ : state) {
    const SolveResult res = eamp_run(gen.problem, cfg, zero_init(gen.problem));
    benchmark::DoNotOptimize(res.kkt);
  }
}
BENCHMARK(bm_solve)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void bm_fista(benchmark::State& state) {
  const GeneratedInstance gen = make_instance(spec_for(static_cast<std::size_t>(state.range(0))));
  SolveConfig cfg;
  cfg.kkt_tol = 1e-6;
  cfg.record_trace = false;
  for (auto _ : state) {
    const SolveResult res = fista_run(gen.problem, cfg);
    benchmark::DoNotOptimize(res.kkt);
  }
}
BENCHMARK(bm_fista)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void bm_jacobi(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GeneratedInstance gen = make_instance(spec_for(n));
  const DenseMatrix g = gram(gen.problem.A);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_symmetric_eigenvalues(g).back());
  }
}
BENCHMARK(bm_jacobi)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void bm_spectrum(benchmark::State& state) {
  const GeneratedInstance gen = make_instance(spec_for(static_cast<std::size_t>(state.range(0))));
  SolveConfig cfg;
  cfg.e = default_e(gen.problem);
  cfg.kkt_tol = 1e-10;
  cfg.record_trace = false;
  const SolveResult res = eamp_run(gen.problem, cfg, zero_init(gen.problem));
  const EquilibriumPoint eq = equilibrium_from_state(gen.problem, res.final_state, 1e-6);
  for (auto _ : state) {
    const StabilityReport rep = analytic_spectrum(gen.problem, eq, cfg.e);
    benchmark::DoNotOptimize(rep.spectral_radius);
  }
}
BENCHMARK(bm_spectrum)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
