#include <benchmark/benchmark.h>

#include "fqlin/projgeom.hpp"
#include "fqlin/runner.hpp"

using namespace fqlin;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

LinearizedPoly cmpz(const Field& F) {
  Vec a(F.n());
  a[1] = F.gen_pow(5);
  a[F.n() / 2 + 1] = F.one();
  return LinearizedPoly(F.n(), 1, a);
}

void BM_FromPolynomial(benchmark::State& st) {
  auto F = Field::make(5, 1, 6);
  const LinearizedPoly f = cmpz(*F);
  for (auto _ : st) benchmark::DoNotOptimize(from_polynomial(F, f, exec_of(st)).size());
}

void BM_Project(benchmark::State& st) {
  auto F = Field::make(5, 1, 6);
  Subgeometry S(F, 2);
  const Vertex V = build_vertex(S, MultiPoly(cmpz(*F)));
  for (auto _ : st) benchmark::DoNotOptimize(project(S, V.gamma, V.lambda_frame, exec_of(st)).image.points.size());
}

void BM_SigmaPointsInVertex(benchmark::State& st) {
  auto F = Field::make(3, 1, 8);
  Subgeometry S(F, 2);
  const Vertex V = build_vertex(S, MultiPoly(cmpz(*F)));
  for (auto _ : st) benchmark::DoNotOptimize(count_sigma_points_in(S, V.gamma, exec_of(st)));
}

void BM_SweepLP(benchmark::State& st) {
  const json spec = {{"field", {{"p", 3}, {"e", 1}, {"n", 5}}},
                     {"family", "LP"},
                     {"validation", "relaxed"},
                     {"params", {{"eta", "all"}}},
                     {"checks", {"scattered", "roundtrip"}}};
  for (auto _ : st) benchmark::DoNotOptimize(run_sweep(spec, exec_of(st)).rows.size());
}

}  // namespace

BENCHMARK(BM_FromPolynomial)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Project)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaPointsInVertex)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepLP)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
