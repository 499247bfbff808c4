#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgsim/embedding_table.hpp"

namespace kgsim {

enum class Metric { euclidean, cosine };
enum class IndexMode { exact, partitioned };

std::string_view to_string(Metric metric);
std::string_view to_string(IndexMode mode);
Metric parse_metric(std::string_view name);
IndexMode parse_index_mode(std::string_view name);

/// Euclidean distance, or 1 - cosine clamped to [0, 2]. A zero vector is at
/// cosine distance 1 from everything.
double distance(Metric metric, std::span<const double> a, std::span<const double> b);

struct NeighborHit {
  std::string qnode;
  double score = 0.0;  // distance; smaller is more similar
  std::string label;

  friend bool operator==(const NeighborHit&, const NeighborHit&) = default;
};

struct IndexConfig {
  Metric metric = Metric::euclidean;
  IndexMode mode = IndexMode::exact;
  std::size_t partitions = 16;
  std::size_t probes = 1;
  std::size_t kmeans_iterations = 25;
  std::uint64_t seed = 42;
  friend bool operator==(const IndexConfig&, const IndexConfig&) = default;
};

using LabelLookup = std::function<std::string(std::string_view)>;

/// Top-K neighbor search over the node vectors of a table. Exact mode scans
/// everything; partitioned mode clusters vectors with seeded k-means and scans
/// only the `probes` partitions whose centroids are closest to the query.
class KnnIndex {
 public:
  /// Throws ConfigError on an empty table or inconsistent partition settings.
  static KnnIndex build(const EmbeddingTable& table, const IndexConfig& config);

  /// Up to k hits ordered by (distance, id), the query node excluded.
  /// Throws NotFoundError if the node is not indexed.
  std::vector<NeighborHit> nearest_neighbors(std::string_view qnode, std::size_t k,
                                             const LabelLookup& labels = {}) const;

  /// Same search from an arbitrary query vector, optionally excluding a row.
  std::vector<NeighborHit> search(std::span<const double> query, std::size_t k,
                                  std::optional<std::size_t> exclude = std::nullopt,
                                  const LabelLookup& labels = {}) const;

  /// Copy of this index that probes `probes` partitions per query.
  KnnIndex with_probes(std::size_t probes) const;

  const IndexConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t width() const noexcept { return width_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  /// Node rows per partition; a single partition in exact mode.
  const std::vector<std::vector<std::uint32_t>>& partitions() const noexcept { return partitions_; }
  const std::vector<double>& centroids() const noexcept { return centroids_; }

  void save(const std::filesystem::path& path) const;
  void save(std::ostream& out) const;
  static KnnIndex load(const std::filesystem::path& path);
  static KnnIndex load(std::istream& in);

  friend bool operator==(const KnnIndex&, const KnnIndex&) = default;

 private:
  std::span<const double> row(std::size_t i) const { return {vectors_.data() + i * width_, width_}; }
  std::span<const double> centroid(std::size_t c) const {
    return {centroids_.data() + c * width_, width_};
  }
  void rebuild_lookup();

  IndexConfig config_;
  std::size_t width_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> vectors_;
  std::vector<double> centroids_;
  std::vector<std::vector<std::uint32_t>> partitions_;
  std::vector<std::pair<std::string, std::uint32_t>> sorted_ids_;
};

}  // namespace kgsim
