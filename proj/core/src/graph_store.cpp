#include "kgsim/graph_store.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "kgsim/error.hpp"
#include "kgsim/text.hpp"

namespace kgsim {
namespace {

struct NameMatch {
  int exact = 0;
  std::size_t length = 0;
  std::string name;
};

std::optional<NameMatch> match_name(const std::vector<std::string>& query,
                                    const std::string& name) {
  const auto tokens = tokenize(name);
  int exact = 0;
  for (const auto& q : query) {
    bool prefix = false;
    bool equal = false;
    for (const auto& t : tokens) {
      if (t.starts_with(q)) {
        prefix = true;
        if (t.size() == q.size()) equal = true;
      }
    }
    if (!prefix) return std::nullopt;
    if (equal) ++exact;
  }
  return NameMatch{exact, name.size(), name};
}

bool better(const NameMatch& a, const NameMatch& b) {
  return std::tie(b.exact, a.length) < std::tie(a.exact, b.length);
}

}  // namespace

bool GraphStore::is_metadata_property(std::string_view property) {
  return property == kLabelProperty || property == kAliasProperty ||
         property == kDescriptionProperty;
}

std::size_t GraphStore::ingest_edges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge file: " + path.string());
  return ingest_edges(in, path.string());
}

std::size_t GraphStore::ingest_edges(std::istream& in, const std::string& source_name) {
  if (frozen_) throw std::logic_error("GraphStore is frozen");
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      if (line != kHeader) {
        throw ParseError(source_name, line_no,
                         "expected header 'node1<TAB>label<TAB>node2'");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "expected 3 columns, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(source_name, line_no, "empty field");
    }
    EdgeRecord edge;
    edge.node1 = std::string(fields[0]);
    edge.property = std::string(fields[1]);
    edge.literal = is_metadata_property(fields[1]) || is_quoted_literal(fields[2]);
    edge.node2 = edge.literal ? strip_literal(fields[2]) : std::string(fields[2]);
    if (edge.node2.empty()) throw ParseError(source_name, line_no, "empty literal");
    add_edge(std::move(edge));
    ++count;
  }
  if (in.bad()) throw IoError("read failure: " + source_name);
  return count;
}

void GraphStore::add_edge(EdgeRecord edge) {
  if (frozen_) throw std::logic_error("GraphStore is frozen");
  if (edge.node1.empty() || edge.property.empty() || edge.node2.empty()) {
    throw Error("edge fields must be non-empty");
  }
  if (is_metadata_property(edge.property)) edge.literal = true;
  by_subject_[edge.node1].push_back(edges_.size());
  if (!edge.literal) {
    note_node(edge.node1);
    note_node(edge.node2);
  } else if (is_metadata_property(edge.property)) {
    apply_metadata(edge);
  }
  edges_.push_back(std::move(edge));
}

void GraphStore::note_node(const std::string& id) {
  if (node_set_.insert(id).second) nodes_.push_back(id);
}

std::set<std::string> GraphStore::tokens_of(const NodeMeta& meta) const {
  std::set<std::string> tokens;
  if (meta.label) {
    for (auto& t : tokenize(*meta.label)) tokens.insert(std::move(t));
  }
  for (const auto& alias : meta.aliases) {
    for (auto& t : tokenize(alias)) tokens.insert(std::move(t));
  }
  return tokens;
}

void GraphStore::apply_metadata(const EdgeRecord& edge) {
  auto [it, inserted] = meta_.try_emplace(edge.node1);
  NodeMeta& meta = it->second;
  if (inserted) meta.id = edge.node1;
  const auto old_tokens = tokens_of(meta);
  if (edge.property == kLabelProperty) {
    meta.label = edge.node2;
  } else if (edge.property == kAliasProperty) {
    const auto folded = case_fold(edge.node2);
    const bool dup = std::any_of(meta.aliases.begin(), meta.aliases.end(),
                                 [&](const std::string& a) { return case_fold(a) == folded; });
    if (!dup) meta.aliases.push_back(edge.node2);
  } else {
    meta.description = edge.node2;
  }
  index_tokens(meta.id, old_tokens);
}

void GraphStore::index_tokens(const std::string& id, const std::set<std::string>& old_tokens) {
  for (const auto& t : old_tokens) {
    auto it = token_index_.find(t);
    if (it == token_index_.end()) continue;
    it->second.erase(id);
    if (it->second.empty()) token_index_.erase(it);
  }
  for (const auto& t : tokens_of(meta_.find(id)->second)) token_index_[t].insert(id);
}

std::vector<EdgeRecord> GraphStore::outgoing_edges(std::string_view node) const {
  std::vector<EdgeRecord> out;
  const auto it = by_subject_.find(std::string(node));
  if (it == by_subject_.end()) return out;
  out.reserve(it->second.size());
  for (auto offset : it->second) out.push_back(edges_[offset]);
  return out;
}

const NodeMeta* GraphStore::meta(std::string_view id) const {
  const auto it = meta_.find(id);
  return it == meta_.end() ? nullptr : &it->second;
}

std::string GraphStore::label_of(std::string_view id) const {
  const auto* m = meta(id);
  return (m && m->label) ? *m->label : std::string();
}

bool GraphStore::is_graph_node(std::string_view id) const {
  return node_set_.contains(std::string(id));
}

bool GraphStore::knows(std::string_view id) const {
  return is_graph_node(id) || by_subject_.contains(std::string(id));
}

std::vector<SearchHit> GraphStore::search_labels(std::string_view query,
                                                 std::size_t limit) const {
  const auto query_tokens = tokenize(query);
  if (query_tokens.empty() || limit == 0) return {};

  std::set<std::string> candidates;
  bool first = true;
  for (const auto& q : query_tokens) {
    std::set<std::string> matching;
    for (auto it = token_index_.lower_bound(q);
         it != token_index_.end() && it->first.starts_with(q); ++it) {
      matching.insert(it->second.begin(), it->second.end());
    }
    if (first) {
      candidates = std::move(matching);
      first = false;
    } else {
      std::set<std::string> both;
      std::set_intersection(candidates.begin(), candidates.end(), matching.begin(),
                            matching.end(), std::inserter(both, both.end()));
      candidates = std::move(both);
    }
    if (candidates.empty()) return {};
  }

  struct Ranked {
    NameMatch match;
    const NodeMeta* meta;
  };
  std::vector<Ranked> ranked;
  for (const auto& id : candidates) {
    const NodeMeta& m = meta_.find(id)->second;
    std::optional<NameMatch> best;
    auto consider = [&](const std::string& name) {
      auto match = match_name(query_tokens, name);
      if (match && (!best || better(*match, *best))) best = std::move(match);
    };
    if (m.label) consider(*m.label);
    for (const auto& alias : m.aliases) consider(alias);
    if (best) ranked.push_back({std::move(*best), &m});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.match.exact != b.match.exact) return a.match.exact > b.match.exact;
    if (a.match.length != b.match.length) return a.match.length < b.match.length;
    return a.meta->id < b.meta->id;
  });
  if (ranked.size() > limit) ranked.resize(limit);

  std::vector<SearchHit> hits;
  hits.reserve(ranked.size());
  for (auto& r : ranked) {
    SearchHit hit;
    hit.qnode = r.meta->id;
    if (r.meta->label) {
      hit.label = *r.meta->label;
    } else if (!r.meta->aliases.empty()) {
      hit.label = r.meta->aliases.front();
    }
    hit.description = r.meta->description.value_or("");
    hit.exact_matches = r.match.exact;
    hit.matched_name = std::move(r.match.name);
    hits.push_back(std::move(hit));
  }
  return hits;
}

void GraphStore::write_edges(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write edge file: " + path.string());
  write_edges(out);
  if (!out) throw IoError("write failure: " + path.string());
}

void GraphStore::write_edges(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& e : edges_) {
    out << e.node1 << '\t' << e.property << '\t';
    if (e.literal) {
      out << '"' << e.node2 << '"';
    } else {
      out << e.node2;
    }
    out << '\n';
  }
}

}  // namespace kgsim
