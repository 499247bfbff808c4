#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgsim/embedding_table.hpp"
#include "kgsim/graph_store.hpp"
#include "kgsim/knn_index.hpp"
#include "kgsim/taxonomy.hpp"

namespace kgsim {

enum class Algorithm { class_based, transe, complex, text };

/// Wire name: "class", "transe", "complex", "text".
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

/// Artifact directory shared by the CLI verbs and the service:
///   graph.tsv, taxonomy.bin, <kind>.tsv, <kind>.relations.tsv, <kind>.index.bin
struct WorkspaceLayout {
  std::filesystem::path root;

  std::filesystem::path graph() const { return root / "graph.tsv"; }
  std::filesystem::path taxonomy() const { return root / "taxonomy.bin"; }
  std::filesystem::path table(EmbeddingKind kind) const {
    return root / (std::string(to_string(kind)) + ".tsv");
  }
  std::filesystem::path relations(EmbeddingKind kind) const {
    return root / (std::string(to_string(kind)) + ".relations.tsv");
  }
  std::filesystem::path index(EmbeddingKind kind) const {
    return root / (std::string(to_string(kind)) + ".index.bin");
  }
};

/// Loaded, immutable indices. Any member except the store may be absent.
struct Engine {
  std::shared_ptr<const GraphStore> store;
  std::shared_ptr<const TaxonomyIndex> taxonomy;
  std::map<EmbeddingKind, std::shared_ptr<const EmbeddingTable>> tables;
  std::map<EmbeddingKind, std::shared_ptr<const KnnIndex>> indices;

  /// Graph node, metadata subject, or present in some table.
  bool knows(std::string_view node) const;
  std::string label_of(std::string_view node) const;
  LabelLookup label_lookup() const;
  const KnnIndex* index_for(EmbeddingKind kind) const;
};

struct EngineOptions {
  TaxonomyConfig taxonomy;
  IndexConfig index;
  std::vector<Algorithm> algorithms = all_algorithms();
  /// Explicit file locations; empty paths fall back to the workspace layout.
  std::filesystem::path graph_path;
  std::map<EmbeddingKind, std::filesystem::path> table_paths;
};

/// Loads everything present in the workspace. The graph is required. A missing
/// taxonomy.bin is rebuilt from the graph; a missing index file is built from
/// its table with `options.index`.
Engine load_engine(const WorkspaceLayout& layout, const EngineOptions& options = {});

struct ExplainedParent {
  std::string qnode;
  double idf = 0.0;
  std::string label;
};

struct SimilarityReport {
  std::string qnode1;
  std::string qnode2;
  /// One entry per enabled algorithm; nullopt when a node lacks the data.
  std::vector<std::pair<Algorithm, std::optional<double>>> scores;
  std::map<std::string, std::string> labels;
  std::vector<ExplainedParent> shared_parents;  // filled when explain is requested
  bool explained = false;
};

SimilarityReport compare(const Engine& engine, std::string_view q1, std::string_view q2,
                         const std::vector<Algorithm>& algorithms, bool explain = false);

}  // namespace kgsim
