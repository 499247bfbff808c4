#include "kgsim/lexicalize.hpp"

namespace kgsim {

std::string lexicalize(const GraphStore& store, std::string_view node) {
  const auto* meta = store.meta(node);
  const bool has_label = meta && meta->label;
  const bool has_description = meta && meta->description;
  const std::string name = has_label ? *meta->label : std::string(node);

  auto display = [&](const std::string& id) {
    auto label = store.label_of(id);
    return label.empty() ? id : label;
  };

  std::string clauses;
  for (const auto& e : store.outgoing_edges(node)) {
    if (GraphStore::is_metadata_property(e.property)) continue;
    clauses += ' ';
    clauses += name;
    clauses += ' ';
    clauses += display(e.property);
    clauses += ' ';
    clauses += e.literal ? e.node2 : display(e.node2);
    clauses += '.';
  }

  if (!has_label && !has_description && clauses.empty()) return std::string(node);

  std::string sentence = name;
  if (has_description) {
    sentence += ", ";
    sentence += *meta->description;
  }
  sentence += '.';
  sentence += clauses;
  return sentence;
}

}  // namespace kgsim
