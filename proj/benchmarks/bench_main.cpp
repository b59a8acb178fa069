#include <random>

#include <benchmark/benchmark.h>

#include "entwined/inference.hpp"
#include "entwined/lie.hpp"
#include "entwined/representations.hpp"

using namespace entwined;

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

void BM_HermitianEigen(benchmark::State& state) {
  const auto m = random_hermitian(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen)->Arg(3)->Arg(8)->Arg(27)->Arg(64);

void BM_StructureConstants(benchmark::State& state) {
  const auto rep = su_fundamental(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(rep));
}
BENCHMARK(BM_StructureConstants)->Arg(2)->Arg(3)->Arg(5);

void BM_DecomposeAdjointSquared(benchmark::State& state) {
  const auto adj = adjoint_rep(structure_constants(su_fundamental(3)));
  const auto product = tensor_rep(adj, adj);
  const auto catalog = build_irrep_catalog("su3", 27);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(product, catalog));
}
BENCHMARK(BM_DecomposeAdjointSquared)->Unit(benchmark::kMillisecond);

void BM_SimulateSternGerlach(benchmark::State& state) {
  const auto rep = su_fundamental(2);
  ComplexVector up(2);
  up << 1, 1;
  const auto initial = StateVector::normalized(up);
  RealVector x = RealVector::Zero(3), y = RealVector::Zero(3);
  x[0] = 1.0;
  y[1] = 1.0;
  const std::vector<Observable> chain{compose_question(x, rep), compose_question(y, rep), compose_question(x, rep)};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_sequence(initial, chain, 100000, 42, {"t1", "t2", "t1"}, threads));
  }
}
BENCHMARK(BM_SimulateSternGerlach)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
