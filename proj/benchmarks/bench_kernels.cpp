// Microbenchmarks for the evaluation, coefficient, and Jacobian kernels.
// Run manually: build/benchmarks/sqsp_bench [--benchmark_filter=...]

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sqsp/chebyshev.hpp"
#include "sqsp/dft.hpp"
#include "sqsp/jacobian.hpp"
#include "sqsp/qsp_eval.hpp"
#include "sqsp/solver.hpp"
#include "sqsp/targets.hpp"
#include "sqsp/types.hpp"

namespace {

sqsp::ReducedPhaseFactors make_phases(int m) {
  std::mt19937_64 rng(99);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    v[i] = 0.2 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
  }
  return {sqsp::Parity::even, v};
}

std::vector<double> make_nodes(int degree) {
  const sqsp::SampleGrid grid(degree);
  return grid.nodes;
}

void bm_sample_g_real(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const sqsp::ReducedPhaseFactors phi = make_phases(m);
  const std::vector<double> xs = make_nodes(phi.degree());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sqsp::sample_g(phi, xs, sqsp::EvalKernel::real_so3));
  }
  state.SetComplexityN(m);
}

void bm_sample_g_complex(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const sqsp::ReducedPhaseFactors phi = make_phases(m);
  const std::vector<double> xs = make_nodes(phi.degree());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sqsp::sample_g(phi, xs, sqsp::EvalKernel::complex_su2));
  }
  state.SetComplexityN(m);
}

void bm_evaluate_F(benchmark::State& state) {
  const sqsp::ReducedPhaseFactors phi =
      make_phases(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqsp::evaluate_F(phi));
  }
}

void bm_jacobian_real(benchmark::State& state) {
  const sqsp::ReducedPhaseFactors phi =
      make_phases(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqsp::jacobian_mps_real(phi));
  }
}

void bm_jacobian_complex(benchmark::State& state) {
  const sqsp::ReducedPhaseFactors phi =
      make_phases(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqsp::jacobian_mps_complex(phi));
  }
}

void bm_dft_odd_length(benchmark::State& state) {
  const int n = 2 * static_cast<int>(state.range(0)) + 1;
  std::mt19937_64 rng(7);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const sqsp::OddLengthDft& plan = sqsp::shared_odd_dft_plan(n);
  std::vector<std::complex<double>> out(n);
  for (auto _ : state) {
    plan.transform(v, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_newton_solve(benchmark::State& state) {
  const double tau = static_cast<double>(state.range(0));
  const sqsp::ChebyshevCoeffVector c = sqsp::jacobi_anger_cos(tau, 1e-14, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sqsp::newton_solve(c));
  }
}

BENCHMARK(bm_sample_g_real)->Arg(100)->Arg(350)->Arg(700)->Complexity();
BENCHMARK(bm_sample_g_complex)->Arg(100)->Arg(350)->Arg(700)->Complexity();
BENCHMARK(bm_evaluate_F)->Arg(100)->Arg(350)->Arg(700);
BENCHMARK(bm_jacobian_real)->Arg(101)->Arg(201)->Arg(401)->Arg(701);
BENCHMARK(bm_jacobian_complex)->Arg(101)->Arg(201)->Arg(401)->Arg(701);
BENCHMARK(bm_dft_odd_length)->Arg(100)->Arg(700)->Arg(1400);
BENCHMARK(bm_newton_solve)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
