#include "kgsim/training_graph.hpp"

#include <unordered_map>

namespace kgsim {

TrainingGraph TrainingGraph::from_store(const GraphStore& store) {
  TrainingGraph g;
  std::unordered_map<std::string, std::uint32_t> entity_ids, relation_ids;
  auto intern = [](std::unordered_map<std::string, std::uint32_t>& ids,
                   std::vector<std::string>& names, const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };
  for (const auto& e : store.edges()) {
    if (e.literal) continue;
    const auto h = intern(entity_ids, g.entities_, e.node1);
    const auto r = intern(relation_ids, g.relations_, e.property);
    const auto t = intern(entity_ids, g.entities_, e.node2);
    g.triples_.push_back({h, r, t});
  }
  // Keys depend on the final counts, so fill the set once numbering is done.
  for (const auto& t : g.triples_) g.known_.insert(g.key(t));
  return g;
}

}  // namespace kgsim
