#include <benchmark/benchmark.h>

#include "qtsolve/circulant.hpp"
#include "qtsolve/pcg.hpp"
#include "qtsolve/signal.hpp"
#include "qtsolve/toeplitz.hpp"

namespace {

using namespace qtsolve;

const Quaternion kBeta{0.45, -0.01, 0.3, -0.35};

QVector random_vector(std::size_t n, std::uint64_t seed) {
  QuaternionGaussian rng(seed);
  QVector out(n);
  for (Quaternion& x : out) x = rng.next(1.0);
  return out;
}

void BM_ToeplitzMatvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermitianQToeplitz t =
      HermitianQToeplitz::from_symbol(SymbolModel::ar1(kBeta, 1.0), n);
  const QVector x = random_vector(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(t.apply(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzMatvec)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity(
    benchmark::oNLogN);

void BM_CirculantSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermitianQToeplitz t =
      HermitianQToeplitz::from_symbol(SymbolModel::ar1(kBeta, 1.0), n);
  const BlockDiagFactor factor{strang(t)};
  const QVector r = random_vector(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(factor.solve(r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CirculantSolve)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity(
    benchmark::oNLogN);

void BM_DenseMatvecOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrixDense dense =
      HermitianQToeplitz::from_symbol(SymbolModel::ar1(kBeta, 1.0), n).densify();
  const QVector x = random_vector(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(dense.matvec(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseMatvecOracle)->RangeMultiplier(2)->Range(1 << 6, 1 << 10)->Complexity(
    benchmark::oNSquared);

void BM_StrangPcgSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ProcessSpec spec{ProcessKind::ar1, kBeta, 1.0, 0};
  auto [t, w] = prediction_system(spec, n);
  const BlockDiagFactor factor{strang(t)};
  SolveConfig cfg;
  cfg.reference = ResidualReference::absolute;
  cfg.record_history = false;
  for (auto _ : state) {
    auto [x, report] = pcg_solve([&t](const QVector& v) { return t.apply(v); },
                                 [&factor](const QVector& v) { return factor.solve(v); }, w, cfg);
    benchmark::DoNotOptimize(report.iterations);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrangPcgSolve)->RangeMultiplier(2)->Range(1 << 8, 1 << 13)->Complexity(
    benchmark::oNLogN);

}  // namespace

BENCHMARK_MAIN();
