#include "kgsim/vector_provider.hpp"

#include <cmath>
#include <cstdint>

#include "kgsim/error.hpp"
#include "kgsim/lexicalize.hpp"
#include "kgsim/text.hpp"

namespace kgsim {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

HashedTokenProvider::HashedTokenProvider(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ConfigError("provider dimension must be positive");
}

std::vector<double> HashedTokenProvider::embed(std::string_view sentence) const {
  std::vector<double> v(dim_, 0.0);
  for (const auto& token : tokenize(sentence)) {
    const auto h = fnv1a(token);
    v[h % dim_] += (h >> 63) ? -1.0 : 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm == 0.0) {
    // No tokens, or they cancelled out.
    v[fnv1a(sentence) % dim_] = 1.0;
    return v;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

EmbeddingTable embed_nodes(const GraphStore& store, const VectorProvider& provider,
                           std::span<const std::string> nodes) {
  EmbeddingTable table(EmbeddingKind::text, provider.dim());
  for (const auto& node : nodes) {
    const auto v = provider.embed(lexicalize(store, node));
    if (v.size() != provider.dim()) throw Error("vector provider returned the wrong width");
    table.nodes().add(node, v);
  }
  return table;
}

}  // namespace kgsim
