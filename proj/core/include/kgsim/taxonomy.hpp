#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgsim/graph_store.hpp"

namespace kgsim {

struct TaxonomyConfig {
  std::string subclass_property = "P279";
  std::string instance_property = "P31";

  /// Throws ConfigError when a property is empty or both are the same.
  void validate() const;

  friend bool operator==(const TaxonomyConfig&, const TaxonomyConfig&) = default;
};

struct SharedParent {
  std::string qnode;
  double idf = 0.0;

  friend bool operator==(const SharedParent&, const SharedParent&) = default;
};

/// Reflexive-transitive is-a closure over subclass-of and instance-of edges,
/// with per-class extension counts and IDF weights.
///
/// A node is a class when it takes part in a subclass edge or is the object of
/// an instance-of edge; classes are their own parents, instances are not.
/// Cycles are collapsed so every member of a strongly connected component
/// shares one parent set. Immutable once built.
class TaxonomyIndex {
 public:
  TaxonomyIndex() = default;

  /// Total number of graph nodes (N in idf = ln(N / ext)).
  std::size_t node_count() const noexcept { return ids_.size(); }

  /// Parent set of a node, sorted by id. Unknown nodes have no parents.
  std::vector<std::string> parents(std::string_view node) const;
  bool has_parent(std::string_view node, std::string_view cls) const;

  /// Number of graph nodes whose closure contains `cls`; 0 if none.
  std::size_t ext(std::string_view cls) const;
  /// ln(N / ext(cls)), or nullopt for a node that is nobody's parent.
  std::optional<double> idf(std::string_view cls) const;

  /// IDF-weighted Jaccard overlap of the two parent sets, in [0, 1].
  /// Zero when the union carries no weight.
  double class_similarity(std::string_view a, std::string_view b) const;

  /// parents(a) intersect parents(b), ordered by idf desc then id asc.
  std::vector<SharedParent> shared_parents(std::string_view a, std::string_view b) const;

  const TaxonomyConfig& config() const noexcept { return config_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  void save(const std::filesystem::path& path) const;
  void save(std::ostream& out) const;
  static TaxonomyIndex load(const std::filesystem::path& path);
  static TaxonomyIndex load(std::istream& in);

  friend bool operator==(const TaxonomyIndex&, const TaxonomyIndex&) = default;

 private:
  friend TaxonomyIndex build_taxonomy(const GraphStore&, const TaxonomyConfig&);

  const std::vector<std::uint32_t>* closure(std::string_view node) const;
  void finish();

  TaxonomyConfig config_;
  std::vector<std::string> ids_;                   // sorted
  std::vector<std::uint32_t> component_of_;        // node -> closure slot
  std::vector<std::vector<std::uint32_t>> closures_;  // sorted node indices
  std::vector<std::uint32_t> ext_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

TaxonomyIndex build_taxonomy(const GraphStore& store, const TaxonomyConfig& config = {});

}  // namespace kgsim
