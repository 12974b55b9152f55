#include <benchmark/benchmark.h>

#include <random>

#include "turan/flags.hpp"
#include "turan/geometry.hpp"
#include "turan/graph.hpp"
#include "turan/pattern.hpp"

namespace {

using namespace turan;

UniformGraph random_graph(int n, std::mt19937_64& rng) {
  UniformGraph g(n, 3);
  for (std::size_t s = 0; s < UniformGraph::slot_count(n, 3, false); ++s)
    if (rng() & 1) g.slot_set(s, true);
  return g;
}

void BM_CanonicalForm(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(12345);
  std::vector<UniformGraph> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(random_graph(n, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_form(pool[i % pool.size()]));
    ++i;
  }
}
BENCHMARK(BM_CanonicalForm)->Arg(5)->Arg(6)->Arg(7);

void BM_Enumerate(benchmark::State& state) {
  EnumerateOptions opt;
  opt.order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(opt));
}
BENCHMARK(BM_Enumerate)->Arg(4)->Arg(5)->Arg(6);

void BM_BlowupDensity(benchmark::State& state) {
  Pattern p = Pattern::parse("parts=3; weights=1/3,1/3,1/3; edges=112,223,331,123");
  UniformGraph k4m = named_graph("K4-");
  for (auto _ : state) benchmark::DoNotOptimize(blowup_density(p, k4m));
}
BENCHMARK(BM_BlowupDensity);

void BM_IteratedDensity(benchmark::State& state) {
  Pattern p = Pattern::parse("parts=2; weights=1/2,1/2; edges=112; recursive=1,2");
  UniformGraph edge = named_graph("edge");
  for (auto _ : state) benchmark::DoNotOptimize(iterated_density(p, edge));
}
BENCHMARK(BM_IteratedDensity);

void BM_GeometricExact(benchmark::State& state) {
  int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geometric_exact(h));
}
BENCHMARK(BM_GeometricExact)->Arg(4)->Arg(5);

void BM_AssembleProblem(benchmark::State& state) {
  ForbiddenFamily none;
  std::vector<UniformGraph> target = {named_graph("edge")};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_problem(n, none, target));
}
BENCHMARK(BM_AssembleProblem)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
