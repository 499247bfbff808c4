#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "kgsim/embedding_table.hpp"
#include "kgsim/graph_store.hpp"
#include "kgsim/knn_index.hpp"
#include "kgsim/random.hpp"
#include "kgsim/taxonomy.hpp"
#include "kgsim/trainers.hpp"

namespace {

using namespace kgsim;

EmbeddingTable random_table(std::size_t n, std::size_t dim) {
  Rng rng(1);
  EmbeddingTable table(EmbeddingKind::text, dim);
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : v) x = rng.normal();
    table.nodes().add("n" + std::to_string(i), v);
  }
  return table;
}

// Random forest of subclass edges with instances hanging off it.
GraphStore random_taxonomy(std::size_t classes, std::size_t instances) {
  Rng rng(2);
  GraphStore store;
  for (std::size_t i = 1; i < classes; ++i) {
    store.add_edge({"C" + std::to_string(i), "P279", "C" + std::to_string(rng.index(i)), false});
  }
  for (std::size_t i = 0; i < instances; ++i) {
    store.add_edge({"I" + std::to_string(i), "P31", "C" + std::to_string(rng.index(classes)), false});
  }
  store.freeze();
  return store;
}

void BM_KnnExact(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 32);
  const auto index = KnnIndex::build(table, {});
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.nearest_neighbors(table.nodes().ids()[q++ % table.nodes().size()], 10));
  }
}
BENCHMARK(BM_KnnExact)->Arg(1000)->Arg(10000);

void BM_KnnPartitioned(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)), 32);
  IndexConfig config;
  config.mode = IndexMode::partitioned;
  config.partitions = 64;
  config.probes = 4;
  const auto index = KnnIndex::build(table, config);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.nearest_neighbors(table.nodes().ids()[q++ % table.nodes().size()], 10));
  }
}
BENCHMARK(BM_KnnPartitioned)->Arg(1000)->Arg(10000);

void BM_BuildTaxonomy(benchmark::State& state) {
  const auto store = random_taxonomy(static_cast<std::size_t>(state.range(0)), 4 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_taxonomy(store));
}
BENCHMARK(BM_BuildTaxonomy)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ClassSimilarity(benchmark::State& state) {
  const auto store = random_taxonomy(2000, 8000);
  const auto tax = build_taxonomy(store);
  Rng rng(3);
  for (auto _ : state) {
    const auto a = "I" + std::to_string(rng.index(8000));
    const auto b = "I" + std::to_string(rng.index(8000));
    benchmark::DoNotOptimize(tax.class_similarity(a, b));
  }
}
BENCHMARK(BM_ClassSimilarity);

void BM_TrainEpoch(benchmark::State& state) {
  const auto store = random_taxonomy(500, 2000);
  TrainConfig config;
  config.epochs = 1;
  const bool complex = state.range(0) == 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complex ? train_complex(store, config) : train_transe(store, config));
  }
  state.SetLabel(complex ? "complex" : "transe");
}
BENCHMARK(BM_TrainEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
