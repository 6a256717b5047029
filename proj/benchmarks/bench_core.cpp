#include <benchmark/benchmark.h>

#include <random>

#include "fraclab/solvers.hpp"

using namespace fraclab;

namespace {

struct Fixture {
  Grid grid;
  KernelMatrix K;
  GridFunction u;
};

Fixture make(double h, double p) {
  Params pr;
  pr.p = p;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid g = build_grid(dom, h, pr);
  KernelMatrix K = assemble_kernel(g, pr);
  GridFunction u = GridFunction::zeros(g);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i : g.interior) u[i] = unit(rng);
  return {std::move(g), std::move(K), std::move(u)};
}

void BM_AssembleKernel(benchmark::State& state) {
  Params pr;
  Domain dom(1, Shape{Interval{-1.0, 1.0}});
  Grid g = build_grid(dom, 1.0 / state.range(0), pr);
  for (auto _ : state) {
    KernelMatrix K = assemble_kernel(g, pr);
    benchmark::DoNotOptimize(K.size());
  }
}
BENCHMARK(BM_AssembleKernel)->Arg(32)->Arg(64);

void BM_ApplyOperator(benchmark::State& state) {
  Fixture f = make(1.0 / state.range(0), static_cast<double>(state.range(1)));
  for (auto _ : state) {
    GridFunction Lu = apply_operator(f.K, f.u, 0.0);
    benchmark::DoNotOptimize(Lu.values.data());
  }
}
BENCHMARK(BM_ApplyOperator)->Args({64, 2})->Args({128, 2})->Args({64, 3});

void BM_GagliardoEnergy(benchmark::State& state) {
  Fixture f = make(1.0 / state.range(0), static_cast<double>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gagliardo_energy(f.K, f.u));
  }
}
BENCHMARK(BM_GagliardoEnergy)->Args({64, 2})->Args({128, 2})->Args({64, 3});

void BM_TorsionSolve(benchmark::State& state) {
  Fixture f = make(1.0 / state.range(0), 2.0);
  SolverConfig cfg;
  cfg.tol_grad = 1e-6;
  for (auto _ : state) {
    DirichletResult r = solve_torsion(f.K, cfg);
    benchmark::DoNotOptimize(r.u.values.data());
  }
}
BENCHMARK(BM_TorsionSolve)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
