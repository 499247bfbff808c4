#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgsim {

enum class EmbeddingKind { transe, complex, text };

std::string_view to_string(EmbeddingKind kind);
/// Throws ConfigError on an unknown name.
EmbeddingKind parse_embedding_kind(std::string_view name);

/// Row-major block of equal-width vectors keyed by id.
class VectorBlock {
 public:
  explicit VectorBlock(std::size_t width = 0) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<std::size_t> find(std::string_view id) const;

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * width_, width_}; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * width_, width_}; }
  std::span<const double> data() const noexcept { return data_; }

  /// Throws Error on a duplicate id or a width mismatch.
  std::size_t add(std::string id, std::span<const double> values);

  friend bool operator==(const VectorBlock& a, const VectorBlock& b) {
    return a.width_ == b.width_ && a.ids_ == b.ids_ && a.data_ == b.data_;
  }

 private:
  std::size_t width_;
  std::vector<std::string> ids_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// Node vectors (and, for trained models, relation vectors) of one model.
/// ComplEx vectors hold 2*dim reals laid out [re_0..re_{d-1}, im_0..im_{d-1}].
class EmbeddingTable {
 public:
  EmbeddingTable(EmbeddingKind kind, std::size_t dim);

  EmbeddingKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Reals stored per vector.
  std::size_t width() const noexcept { return nodes_.width(); }

  VectorBlock& nodes() noexcept { return nodes_; }
  const VectorBlock& nodes() const noexcept { return nodes_; }
  VectorBlock& relations() noexcept { return relations_; }
  const VectorBlock& relations() const noexcept { return relations_; }

  bool contains(std::string_view node) const { return nodes_.find(node).has_value(); }
  /// Throws NotFoundError when absent.
  std::span<const double> vector(std::string_view node) const;

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  EmbeddingKind kind_;
  std::size_t dim_;
  VectorBlock nodes_;
  VectorBlock relations_;
};

std::size_t storage_width(EmbeddingKind kind, std::size_t dim);

/// dot(u, v) / (|u| |v|). Throws UndefinedSimilarityError if either is zero.
double cosine(std::span<const double> u, std::span<const double> v);
/// Throws NotFoundError naming the missing node.
double cosine(const EmbeddingTable& table, std::string_view a, std::string_view b);

/// Reads `node_id<TAB>v0<TAB>...` lines. The width of the first line fixes
/// the width of the table; for complex tables it must be even.
EmbeddingTable ingest_vectors(const std::filesystem::path& path, EmbeddingKind kind);
EmbeddingTable ingest_vectors(std::istream& in, EmbeddingKind kind, const std::string& source_name);

/// Writes node vectors in the same format, 17 significant digits.
void write_vectors(const VectorBlock& block, const std::filesystem::path& path);
void write_vectors(const VectorBlock& block, std::ostream& out);

/// Reads a vector file into an existing block (used for relation vectors).
VectorBlock read_vector_block(const std::filesystem::path& path);

}  // namespace kgsim
