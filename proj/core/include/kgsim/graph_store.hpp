#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgsim {

/// One (node1, property, node2) statement. `literal` marks node2 as a value
/// (quotes already stripped) rather than a node id.
struct EdgeRecord {
  std::string node1;
  std::string property;
  std::string node2;
  bool literal = false;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct NodeMeta {
  std::string id;
  std::optional<std::string> label;
  std::vector<std::string> aliases;
  std::optional<std::string> description;
};

struct SearchHit {
  std::string qnode;
  std::string label;
  std::string description;
  int exact_matches = 0;
  std::string matched_name;
};

/// Edge-list graph with node metadata and a prefix token index over labels
/// and aliases.
///
/// Writes happen through ingest_edges()/add_edge() until freeze(); after that
/// the store is read-only and safe to share between threads.
class GraphStore {
 public:
  static constexpr std::string_view kHeader = "node1\tlabel\tnode2";
  static constexpr std::string_view kLabelProperty = "label";
  static constexpr std::string_view kAliasProperty = "alias";
  static constexpr std::string_view kDescriptionProperty = "description";

  /// Loads a tab-separated edge file. Returns the number of edge rows read.
  /// Throws IoError if the file cannot be opened, ParseError on a bad row.
  std::size_t ingest_edges(const std::filesystem::path& path);
  std::size_t ingest_edges(std::istream& in, const std::string& source_name);

  void add_edge(EdgeRecord edge);

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  std::span<const EdgeRecord> edges() const noexcept { return edges_; }

  /// Edges with node1 == node, in ingestion order. Unknown nodes yield {}.
  std::vector<EdgeRecord> outgoing_edges(std::string_view node) const;

  const NodeMeta* meta(std::string_view id) const;
  std::size_t meta_count() const noexcept { return meta_.size(); }

  /// Label, or the empty string when the node has none.
  std::string label_of(std::string_view id) const;

  /// Node ids that appear in at least one non-literal edge, first-seen order.
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  bool is_graph_node(std::string_view id) const;

  /// True if the id occurs anywhere: as a graph node or as a metadata subject.
  bool knows(std::string_view id) const;

  /// Every query token must be a prefix of some token of the node's label or
  /// of one alias. Ranked by exact token matches (desc), matched name length
  /// (asc), node id (asc).
  std::vector<SearchHit> search_labels(std::string_view query, std::size_t limit) const;

  /// Writes the store back out in edge-file format (literals double-quoted).
  void write_edges(const std::filesystem::path& path) const;
  void write_edges(std::ostream& out) const;

  static bool is_metadata_property(std::string_view property);

 private:
  void apply_metadata(const EdgeRecord& edge);
  void index_tokens(const std::string& id, const std::set<std::string>& old_tokens);
  std::set<std::string> tokens_of(const NodeMeta& meta) const;
  void note_node(const std::string& id);

  bool frozen_ = false;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_subject_;
  std::map<std::string, NodeMeta, std::less<>> meta_;
  std::map<std::string, std::set<std::string>, std::less<>> token_index_;
  std::vector<std::string> nodes_;
  std::unordered_set<std::string> node_set_;
};

}  // namespace kgsim
