#include <benchmark/benchmark.h>

#include "nscurve/analytic/lvalue.hpp"
#include "nscurve/family/ns_curve.hpp"
#include "nscurve/modsym/degree.hpp"
#include "nscurve/modsym/hecke.hpp"
#include "nscurve/modsym/linalg.hpp"
#include "nscurve/modsym/space.hpp"
#include "nscurve/survey/sieve.hpp"

using namespace nscurve;

static void BM_HeckeT2(benchmark::State& state) {
  const modsym::ManinSymbolSpace space(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(modsym::hecke_operator(space, 2));
}
BENCHMARK(BM_HeckeT2)->Arg(1153)->Arg(16193)->Unit(benchmark::kMillisecond);

static void BM_ModularLU(benchmark::State& state) {
  const modsym::ManinSymbolSpace space(static_cast<std::uint32_t>(state.range(0)));
  const auto t2 = modsym::hecke_operator(space, 2);
  const auto q = modsym::elimination_primes().front();
  for (auto _ : state) benchmark::DoNotOptimize(modsym::ModularLU(t2, q).rank());
}
BENCHMARK(BM_ModularLU)->Arg(1153)->Arg(4177)->Unit(benchmark::kMillisecond);

static void BM_ModularDegree(benchmark::State& state) {
  const auto pair = family::construct_pair(mpz_class(state.range(0)));
  modsym::DegreeOptions opts;
  opts.numeric = modsym::NumericCheck::Never;
  for (auto _ : state) benchmark::DoNotOptimize(modsym::modular_degree(pair, opts).m);
}
BENCHMARK(BM_ModularDegree)->Arg(-17)->Arg(-33)->Unit(benchmark::kMillisecond);

static void BM_LValue(benchmark::State& state) {
  const auto pair = family::construct_pair(mpz_class(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::lvalue_rank0(pair.e1, pair.parameter.p, 1e-12, 128).terms);
}
BENCHMARK(BM_LValue)->Arg(3)->Arg(175)->Arg(-1997)->Unit(benchmark::kMicrosecond);

static void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(survey::sieve_ns_u(static_cast<std::uint64_t>(state.range(0))).size());
}
BENCHMARK(BM_Sieve)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
