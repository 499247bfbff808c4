#include "kgsim/engine.hpp"

#include <algorithm>

#include "kgsim/error.hpp"

namespace kgsim {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::class_based: return "class";
    case Algorithm::transe: return "transe";
    case Algorithm::complex: return "complex";
    case Algorithm::text: return "text";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "class") return Algorithm::class_based;
  if (name == "transe") return Algorithm::transe;
  if (name == "complex") return Algorithm::complex;
  if (name == "text") return Algorithm::text;
  throw ConfigError("unknown algorithm: " + std::string(name));
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all{Algorithm::class_based, Algorithm::transe,
                                          Algorithm::complex, Algorithm::text};
  return all;
}

bool Engine::knows(std::string_view node) const {
  if (store && store->knows(node)) return true;
  for (const auto& [kind, table] : tables) {
    if (table->contains(node)) return true;
  }
  return false;
}

std::string Engine::label_of(std::string_view node) const {
  return store ? store->label_of(node) : std::string();
}

LabelLookup Engine::label_lookup() const {
  auto s = store;
  return [s](std::string_view id) { return s ? s->label_of(id) : std::string(); };
}

const KnnIndex* Engine::index_for(EmbeddingKind kind) const {
  const auto it = indices.find(kind);
  return it == indices.end() ? nullptr : it->second.get();
}

Engine load_engine(const WorkspaceLayout& layout, const EngineOptions& options) {
  Engine engine;
  auto store = std::make_shared<GraphStore>();
  store->ingest_edges(options.graph_path.empty() ? layout.graph() : options.graph_path);
  store->freeze();
  engine.store = store;

  const auto enabled = [&](Algorithm a) {
    return std::find(options.algorithms.begin(), options.algorithms.end(), a) !=
           options.algorithms.end();
  };

  if (enabled(Algorithm::class_based)) {
    const auto path = layout.taxonomy();
    if (std::filesystem::exists(path)) {
      auto tx = TaxonomyIndex::load(path);
      if (!(tx.config() == options.taxonomy)) {
        throw ConfigError("taxonomy.bin was built with different is-a properties");
      }
      engine.taxonomy = std::make_shared<TaxonomyIndex>(std::move(tx));
    } else {
      engine.taxonomy = std::make_shared<TaxonomyIndex>(build_taxonomy(*store, options.taxonomy));
    }
  }

  const std::pair<Algorithm, EmbeddingKind> kinds[] = {{Algorithm::transe, EmbeddingKind::transe},
                                                       {Algorithm::complex, EmbeddingKind::complex},
                                                       {Algorithm::text, EmbeddingKind::text}};
  for (const auto& [algorithm, kind] : kinds) {
    if (!enabled(algorithm)) continue;
    const auto explicit_path = options.table_paths.find(kind);
    const auto path =
        explicit_path != options.table_paths.end() ? explicit_path->second : layout.table(kind);
    if (!std::filesystem::exists(path)) continue;
    auto table = std::make_shared<EmbeddingTable>(ingest_vectors(path, kind));
    if (std::filesystem::exists(layout.relations(kind))) {
      table->relations() = read_vector_block(layout.relations(kind));
    }
    const auto index_path = layout.index(kind);
    if (std::filesystem::exists(index_path)) {
      engine.indices[kind] = std::make_shared<KnnIndex>(KnnIndex::load(index_path));
    } else {
      engine.indices[kind] = std::make_shared<KnnIndex>(KnnIndex::build(*table, options.index));
    }
    engine.tables[kind] = std::move(table);
  }
  return engine;
}

SimilarityReport compare(const Engine& engine, std::string_view q1, std::string_view q2,
                         const std::vector<Algorithm>& algorithms, bool explain) {
  SimilarityReport report;
  report.qnode1 = std::string(q1);
  report.qnode2 = std::string(q2);
  for (auto algorithm : algorithms) {
    std::optional<double> score;
    if (algorithm == Algorithm::class_based) {
      if (engine.taxonomy) score = engine.taxonomy->class_similarity(q1, q2);
    } else {
      const auto kind = algorithm == Algorithm::transe    ? EmbeddingKind::transe
                        : algorithm == Algorithm::complex ? EmbeddingKind::complex
                                                          : EmbeddingKind::text;
      const auto it = engine.tables.find(kind);
      if (it != engine.tables.end() && it->second->contains(q1) && it->second->contains(q2)) {
        try {
          score = cosine(*it->second, q1, q2);
        } catch (const UndefinedSimilarityError&) {
          score.reset();
        }
      }
    }
    report.scores.emplace_back(algorithm, score);
  }
  report.labels[report.qnode1] = engine.label_of(q1);
  report.labels[report.qnode2] = engine.label_of(q2);
  if (explain) {
    report.explained = true;
    if (engine.taxonomy) {
      for (auto& p : engine.taxonomy->shared_parents(q1, q2)) {
        auto label = engine.label_of(p.qnode);
        report.shared_parents.push_back({std::move(p.qnode), p.idf, std::move(label)});
      }
    }
  }
  return report;
}

}  // namespace kgsim
