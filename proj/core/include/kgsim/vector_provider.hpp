#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgsim/embedding_table.hpp"
#include "kgsim/graph_store.hpp"

namespace kgsim {

/// Source of sentence vectors, e.g. a language model running out of process.
class VectorProvider {
 public:
  virtual ~VectorProvider() = default;
  virtual std::size_t dim() const = 0;
  /// Must return exactly dim() values, not all zero.
  virtual std::vector<double> embed(std::string_view sentence) const = 0;
};

/// Signed feature hashing of case-folded tokens, L2-normalized. Lets the text
/// pipeline run end to end without an external model.
class HashedTokenProvider final : public VectorProvider {
 public:
  explicit HashedTokenProvider(std::size_t dim = 64);

  std::size_t dim() const override { return dim_; }
  std::vector<double> embed(std::string_view sentence) const override;

 private:
  std::size_t dim_;
};

/// Lexicalizes each node and embeds the sentence. The result has kind text.
EmbeddingTable embed_nodes(const GraphStore& store, const VectorProvider& provider,
                           std::span<const std::string> nodes);

}  // namespace kgsim
