#include <benchmark/benchmark.h>

#include <random>

#include "arrlog/checks.hpp"

using namespace arrlog;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix<F> m(f, n, n + n / 2);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.from_int(static_cast<long>(draw(rng, 0, 20)) - 10);
  return m;
}

template <class F>
Arrangement<F> library(const F& f, const std::string& name) {
  return make_arrangement(f, example_library(name, f.spec()));
}

}  // namespace

static void BM_RrefPrime(benchmark::State& state) {
  const PrimeField f(1000003);
  const auto m = random_matrix(f, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_RrefPrime)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

// Coefficient growth makes rationals far slower; kept small.
static void BM_RrefRational(benchmark::State& state) {
  const RationalField q;
  const auto m = random_matrix(q, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_RrefRational)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

// One graded piece of Omega^1 solved from scratch (new module per iteration, so no cache hits).
static void BM_FormPiece(benchmark::State& state) {
  const auto a = library(PrimeField(1000003), "ziegler22");
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const LogModule<PrimeField> m(a, LogKind::Forms, 1);
    benchmark::DoNotOptimize(m.dimension(d));
  }
}
BENCHMARK(BM_FormPiece)->Arg(-9)->Arg(-5)->Arg(-1)->Unit(benchmark::kMillisecond);

static void BM_SaitoZiegler(benchmark::State& state) {
  const auto a = library(PrimeField(1000003), "ziegler22");
  for (auto _ : state) benchmark::DoNotOptimize(saito_check(a).free);
}
BENCHMARK(BM_SaitoZiegler)->Unit(benchmark::kMillisecond);

static void BM_GeneratorSweepNine(benchmark::State& state) {
  const auto a = library(PrimeField(1000003), "nine4d");
  for (auto _ : state) {
    const LogModule<PrimeField> m(a, LogKind::Forms, 1);
    benchmark::DoNotOptimize(minimal_generators(m, -9, 0).degrees.size());
  }
}
BENCHMARK(BM_GeneratorSweepNine)->Unit(benchmark::kMillisecond);

static void BM_Lattice(benchmark::State& state) {
  const auto a = library(PrimeField(1000003), "ziegler22");
  for (auto _ : state) benchmark::DoNotOptimize(intersection_lattice(a, 3).levels.size());
}
BENCHMARK(BM_Lattice)->Unit(benchmark::kMillisecond);

static void BM_Criticality(benchmark::State& state) {
  const auto a = library(PrimeField(41), "g:5");
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(criticality_check(a, 8, threads).critical);
}
BENCHMARK(BM_Criticality)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
