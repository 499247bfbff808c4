#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "kgsim/graph_store.hpp"

namespace kgsim {

struct Triple {
  std::uint32_t head;
  std::uint32_t relation;
  std::uint32_t tail;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Integer-coded (head, relation, tail) triples drawn from the non-literal
/// edges of a store. Entities and relations are numbered in first-seen order.
class TrainingGraph {
 public:
  static TrainingGraph from_store(const GraphStore& store);

  const std::vector<std::string>& entities() const noexcept { return entities_; }
  const std::vector<std::string>& relations() const noexcept { return relations_; }
  const std::vector<Triple>& triples() const noexcept { return triples_; }

  /// True if the triple is a known fact.
  bool contains(const Triple& t) const { return known_.contains(key(t)); }

 private:
  std::uint64_t key(const Triple& t) const {
    return (static_cast<std::uint64_t>(t.head) * relations_.size() + t.relation) *
               entities_.size() + t.tail;
  }

  std::vector<std::string> entities_;
  std::vector<std::string> relations_;
  std::vector<Triple> triples_;
  std::unordered_set<std::uint64_t> known_;
};

}  // namespace kgsim
