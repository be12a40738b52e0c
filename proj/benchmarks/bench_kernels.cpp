#include <benchmark/benchmark.h>

#include <cmath>

#include "solitwave/collocation.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/propagator.hpp"
#include "solitwave/spectral.hpp"

using namespace solitwave;

namespace {

const ModelParams kOctic({-2, 2, -2, 2, 20, 5, 20, 5}, 0.8);
const ModelParams kQuartic({-2, 2, -2, 2, 3, 3, 3, 3}, 0.6);

void BM_Derivative(benchmark::State& state) {
  const Grid g(200.0, static_cast<std::size_t>(state.range(0)));
  SpectralWorkspace ws(g);
  const WaveProfile w = gaussian_initial(g, 100.0, 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ws.derivative(w.psi, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_PetviashviliIteration(benchmark::State& state) {
  const Grid g(200.0, static_cast<std::size_t>(state.range(0)));
  SpectralWorkspace ws(g);
  const DispersionMatrix d = build_dispersion(g, kOctic);
  const Nonlinearity nl = Nonlinearity::homogeneous(8);
  const WaveProfile w = gaussian_initial(g, 100.0, 0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(iterate_once(ws, w, d, nl, 8));
}
BENCHMARK(BM_PetviashviliIteration)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_PetviashviliSolve(benchmark::State& state) {
  const Grid g(200.0, 4096);
  const WaveProfile w = gaussian_initial(g, 100.0, 0.5, 1.0);
  const Nonlinearity nl = Nonlinearity::homogeneous(8);
  for (auto _ : state) benchmark::DoNotOptimize(petviashvili_solve(w, kOctic, nl));
}
BENCHMARK(BM_PetviashviliSolve)->Unit(benchmark::kMillisecond);

void BM_CollocationResidual(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GaussianPulse p{50.0, 0.05, 1.0};
  CollocationProblem prob(50.0, n, kQuartic, Nonlinearity::quartic());
  const Eigen::VectorXd c = gaussian_expansion(50.0, n, p, p).packed();
  for (auto _ : state) benchmark::DoNotOptimize(prob.residual(c));
}
BENCHMARK(BM_CollocationResidual)->Arg(256)->Arg(1024)->Arg(4096);

void BM_CollocationJacobian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) == 0 ? JacobianMode::Analytic : JacobianMode::FiniteDifference;
  const GaussianPulse p{50.0, 0.05, 1.0};
  CollocationProblem prob(50.0, n, kQuartic, Nonlinearity::quartic());
  const Eigen::VectorXd c = gaussian_expansion(50.0, n, p, p).packed();
  for (auto _ : state) benchmark::DoNotOptimize(prob.jacobian(c, mode));
  state.SetLabel(state.range(1) == 0 ? "analytic" : "finite-difference");
}
BENCHMARK(BM_CollocationJacobian)->Args({128, 0})->Args({128, 1})->Args({512, 0})->Args({512, 1})
    ->Unit(benchmark::kMillisecond);

void BM_PropagatorStep(benchmark::State& state) {
  const Grid g(200.0, static_cast<std::size_t>(state.range(0)));
  SpectralWorkspace ws(g);
  const EvolutionSymbols sym = build_symbols(g, kOctic, 1e-3, 0.5);
  const Nonlinearity nl = state.range(1) == 0 ? Nonlinearity::homogeneous(8) : Nonlinearity::quartic();
  const WaveProfile w = gaussian_initial(g, 100.0, 0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(step(ws, w, sym, nl));
  state.SetLabel(state.range(1) == 0 ? "power" : "quartic");
}
BENCHMARK(BM_PropagatorStep)->Args({4096, 0})->Args({4096, 1});

}  // namespace

BENCHMARK_MAIN();
