#include "kgsim/link_prediction.hpp"

#include <numeric>

#include "kgsim/error.hpp"
#include "kgsim/random.hpp"

namespace kgsim {

double triple_plausibility(const EmbeddingTable& table, std::span<const double> h,
                           std::span<const double> r, std::span<const double> t, Norm norm) {
  switch (table.kind()) {
    case EmbeddingKind::transe: return -transe_distance(h, r, t, norm);
    case EmbeddingKind::complex: return complex_score(h, r, t);
    case EmbeddingKind::text: break;
  }
  throw ConfigError("text tables have no triple model");
}

RankingReport evaluate_tail_prediction(const EmbeddingTable& table, const TrainingGraph& graph,
                                       std::size_t hits_k, Norm norm, std::size_t candidates,
                                       std::uint64_t seed) {
  const auto& entities = graph.entities();
  std::vector<std::size_t> entity_rows(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto row = table.nodes().find(entities[i]);
    if (!row) throw NotFoundError(entities[i]);
    entity_rows[i] = *row;
  }
  std::vector<std::size_t> relation_rows(graph.relations().size());
  for (std::size_t i = 0; i < graph.relations().size(); ++i) {
    const auto row = table.relations().find(graph.relations()[i]);
    if (!row) throw NotFoundError(graph.relations()[i]);
    relation_rows[i] = *row;
  }

  Rng rng(seed);
  const bool sampled = candidates > 0 && candidates < entities.size();
  std::vector<std::size_t> pool(entities.size());
  RankingReport report;
  double rank_sum = 0.0;
  std::size_t hits = 0;
  for (const auto& t : graph.triples()) {
    const auto h = table.nodes().row(entity_rows[t.head]);
    const auto r = table.relations().row(relation_rows[t.relation]);
    const double truth = triple_plausibility(table, h, r, table.nodes().row(entity_rows[t.tail]), norm);

    std::iota(pool.begin(), pool.end(), 0);
    std::size_t count = pool.size();
    if (sampled) {
      // Partial Fisher-Yates over everything except the true tail.
      std::swap(pool[t.tail], pool.back());
      const auto others = pool.size() - 1;
      for (std::size_t i = 0; i + 1 < candidates; ++i) {
        std::swap(pool[i], pool[i + rng.index(others - i)]);
      }
      count = candidates - 1;
    }
    std::size_t rank = 1;
    for (std::size_t i = 0; i < count; ++i) {
      const auto e = pool[i];
      if (e == t.tail) continue;
      const double s = triple_plausibility(table, h, r, table.nodes().row(entity_rows[e]), norm);
      if (s >= truth) ++rank;
    }
    rank_sum += static_cast<double>(rank);
    if (rank <= hits_k) ++hits;
    ++report.evaluated;
  }
  if (report.evaluated > 0) {
    report.mean_rank = rank_sum / static_cast<double>(report.evaluated);
    report.hits_at_k = static_cast<double>(hits) / static_cast<double>(report.evaluated);
  }
  return report;
}

}  // namespace kgsim
