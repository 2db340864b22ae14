// Serial reference vs OpenMP kernels on a few catalog groups.
//
//   loopforge_bench --benchmark_filter=Step4

#include <benchmark/benchmark.h>

#include <map>

#include "loopforge/catalog.hpp"
#include "loopforge/driver.hpp"
#include "loopforge/search.hpp"

using namespace loopforge;

namespace
{

std::vector<GroupCatalogEntry> const &catalog()
{
  static auto const c = load_catalog(LOOPFORGE_DEFAULT_CATALOG);
  return c;
}

char const *const groups[] = {"Alt(5)^2", "Alt(5)^2.2", "2^6:(GL(3, 2) wreath 2)",
                              "3^4:(GL(2, 3) wreath 2)"};

struct Prepared
{
  PermGroup G;
  PermGroup H;
  std::vector<PointOrbit> layers;
  std::vector<std::vector<Perm>> candidates;
  std::vector<CandidateOrbit> vertices;
  CompatibilityGraph graph;
};

Prepared const &prepared(std::size_t which)
{
  static std::map<std::size_t, Prepared> cache;
  auto it = cache.find(which);
  if (it != cache.end())
    return it->second;

  auto G = resolve_group_ref(catalog(), groups[which]).group();
  Point zero = 0;
  auto H = G.stabilizer(std::span<Point const>(&zero, 1));
  Prepared p{std::move(G), std::move(H), {}, {}, {}, {}};
  p.layers = step1_orbit_reps(p.H);
  SearchLimits limits;
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    p.candidates.push_back(step2_candidates(p.G, p.H, p.layers[l].representative, limits));
    for (auto &o : step3_candidate_orbits(p.H, p.layers[l], l, p.candidates.back(), false))
      p.vertices.push_back(std::move(o));
  }
  p.graph = step4_graph(p.vertices, p.layers.size(), false);
  return cache.emplace(which, std::move(p)).first->second;
}

void Step3(benchmark::State &state)
{
  auto const &p = prepared(state.range(0));
  bool parallel = state.range(1);
  state.SetLabel(groups[state.range(0)]);
  for (auto _ : state) {
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
      benchmark::DoNotOptimize(
        step3_candidate_orbits(p.H, p.layers[l], l, p.candidates[l], parallel));
    }
  }
}

void Step4(benchmark::State &state)
{
  auto const &p = prepared(state.range(0));
  bool parallel = state.range(1);
  state.SetLabel(groups[state.range(0)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(step4_graph(p.vertices, p.layers.size(), parallel));
}

void Step5(benchmark::State &state)
{
  auto const &p = prepared(state.range(0));
  bool parallel = state.range(1);
  state.SetLabel(groups[state.range(0)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(step5_assemble(p.graph, 100'000'000, parallel));
}

// Whole degrees, groups distributed over jobs.
void RunSearch(benchmark::State &state)
{
  RunConfig c;
  c.degrees = {60, 64, 81};
  c.iso_filter = true;
  c.catalog_path = LOOPFORGE_DEFAULT_CATALOG;
  c.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_search(c, catalog()));
}

void args(benchmark::internal::Benchmark *b)
{
  b->ArgNames({"group", "parallel"});
  for (long g = 0; g < long(std::size(groups)); ++g) {
    b->Args({g, 0});
    b->Args({g, 1});
  }
  b->Unit(benchmark::kMillisecond);
}

} // anonymous namespace

BENCHMARK(Step3)->Apply(args);
BENCHMARK(Step4)->Apply(args);
BENCHMARK(Step5)->Apply(args);
BENCHMARK(RunSearch)->ArgName("jobs")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
