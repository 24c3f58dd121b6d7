#include <vector>

#include <benchmark/benchmark.h>

#include "qdf/qdf.hpp"

using namespace qdf;

static void BM_NormReportSparseGeometric(benchmark::State& state) {
  const auto spec = OperatorSpec::weighted_shift(WeightFormula::inverse());
  const auto family = ProjectionFamily::sparse(IndexSequence::geometric(2));
  const auto n = static_cast<Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(spec, family, n));
}
BENCHMARK(BM_NormReportSparseGeometric)->Arg(1024)->Arg(8192);

static void BM_NormReportHermite(benchmark::State& state) {
  const auto spec = OperatorSpec::product({OperatorSpec::hermite_q(), OperatorSpec::hermite_q()});
  const auto n = static_cast<Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(spec, ProjectionFamily::canonical(), n));
}
BENCHMARK(BM_NormReportHermite)->Arg(1000)->Arg(1000000);

static void BM_HalmosCompactShift(benchmark::State& state) {
  const auto spec = OperatorSpec::weighted_shift(WeightFormula::inverse());
  const auto dim = static_cast<Index>(state.range(0));
  for (auto _ : state) {
    const auto boundaries = select_subsequence(spec, ProjectionFamily::canonical(), 0.1, dim - 1);
    benchmark::DoNotOptimize(halmos_decompose(spec, boundaries, dim, 0.1));
  }
}
BENCHMARK(BM_HalmosCompactShift)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_BergRandomHermitian(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  const auto a = random_hermitian(dim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(berg_sequence(a, {}, 0.05));
}
BENCHMARK(BM_BergRandomHermitian)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_EmpiricalSpectrum(benchmark::State& state) {
  const auto spec = OperatorSpec::toeplitz({{-2, 0.5}, {-1, 1.0}, {1, 1.0}, {2, 0.5}});
  const auto n = static_cast<Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_spectrum(spec, n));
}
BENCHMARK(BM_EmpiricalSpectrum)->Arg(400)->Arg(3200)->Unit(benchmark::kMillisecond);

static void BM_WeylMultiply(benchmark::State& state) {
  const auto x = WeylElement::parse("(p + q)^6");
  const auto y = WeylElement::parse("(p - i*q)^6");
  for (auto _ : state) benchmark::DoNotOptimize(multiply(x, y));
}
BENCHMARK(BM_WeylMultiply);

static void BM_FoelnerRatio(benchmark::State& state) {
  const auto a = WeylElement::monomial(1, 1);
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(foelner_ratio(a, n));
}
BENCHMARK(BM_FoelnerRatio)->Arg(10)->Arg(38)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
