#include "kgsim/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "binary_io.hpp"
#include "kgsim/error.hpp"

namespace kgsim {
namespace {

constexpr char kMagic[5] = "KGTX";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

using Adjacency = std::vector<std::vector<std::uint32_t>>;

void merge_into(std::vector<std::uint32_t>& acc, const std::vector<std::uint32_t>& more) {
  std::vector<std::uint32_t> merged;
  merged.reserve(acc.size() + more.size());
  std::set_union(acc.begin(), acc.end(), more.begin(), more.end(), std::back_inserter(merged));
  acc.swap(merged);
}

// Iterative Tarjan. Components come out in reverse topological order: every
// component reachable from C is emitted before C.
std::vector<std::vector<std::uint32_t>> strongly_connected(const Adjacency& adj) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> components;
  std::uint32_t next_index = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const auto v = frame.node;
      if (frame.edge < adj[v].size()) {
        const auto w = adj[v][frame.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> component;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call.pop_back();
      if (!call.empty()) {
        const auto parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return components;
}

}  // namespace

void TaxonomyConfig::validate() const {
  if (subclass_property.empty() || instance_property.empty()) {
    throw ConfigError("taxonomy properties must be non-empty");
  }
  if (subclass_property == instance_property) {
    throw ConfigError("subclass and instance properties must differ");
  }
}

TaxonomyIndex build_taxonomy(const GraphStore& store, const TaxonomyConfig& config) {
  config.validate();
  TaxonomyIndex tx;
  tx.config_ = config;
  tx.ids_ = store.nodes();
  std::sort(tx.ids_.begin(), tx.ids_.end());
  const auto n = static_cast<std::uint32_t>(tx.ids_.size());
  for (std::uint32_t i = 0; i < n; ++i) tx.lookup_.emplace(tx.ids_[i], i);

  Adjacency adj(n);
  std::vector<bool> is_class(n, false);
  for (const auto& e : store.edges()) {
    if (e.literal) continue;
    const bool sub = e.property == config.subclass_property;
    const bool inst = e.property == config.instance_property;
    if (!sub && !inst) continue;
    const auto u = tx.lookup_.at(e.node1);
    const auto v = tx.lookup_.at(e.node2);
    adj[u].push_back(v);
    is_class[v] = true;
    if (sub) is_class[u] = true;
  }

  const auto components = strongly_connected(adj);
  tx.component_of_.assign(n, 0);
  for (std::uint32_t c = 0; c < components.size(); ++c) {
    for (auto v : components[c]) tx.component_of_[v] = c;
  }
  tx.closures_.resize(components.size());
  for (std::uint32_t c = 0; c < components.size(); ++c) {
    auto& closure = tx.closures_[c];
    for (auto v : components[c]) {
      if (is_class[v]) closure.push_back(v);
    }
    for (auto v : components[c]) {
      for (auto w : adj[v]) {
        const auto target = tx.component_of_[w];
        if (target != c) merge_into(closure, tx.closures_[target]);
      }
    }
  }
  tx.finish();
  return tx;
}

void TaxonomyIndex::finish() {
  const auto n = ids_.size();
  if (lookup_.empty()) {
    for (std::uint32_t i = 0; i < n; ++i) lookup_.emplace(ids_[i], i);
  }
  ext_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto c : closures_[component_of_[v]]) ++ext_[c];
  }
  idf_.assign(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    if (ext_[c] > 0) idf_[c] = std::log(static_cast<double>(n) / static_cast<double>(ext_[c]));
  }
}

const std::vector<std::uint32_t>* TaxonomyIndex::closure(std::string_view node) const {
  const auto it = lookup_.find(std::string(node));
  if (it == lookup_.end()) return nullptr;
  return &closures_[component_of_[it->second]];
}

std::vector<std::string> TaxonomyIndex::parents(std::string_view node) const {
  std::vector<std::string> out;
  if (const auto* c = closure(node)) {
    out.reserve(c->size());
    for (auto i : *c) out.push_back(ids_[i]);
  }
  return out;
}

bool TaxonomyIndex::has_parent(std::string_view node, std::string_view cls) const {
  const auto* c = closure(node);
  const auto it = lookup_.find(std::string(cls));
  return c && it != lookup_.end() && std::binary_search(c->begin(), c->end(), it->second);
}

std::size_t TaxonomyIndex::ext(std::string_view cls) const {
  const auto it = lookup_.find(std::string(cls));
  return it == lookup_.end() ? 0 : ext_[it->second];
}

std::optional<double> TaxonomyIndex::idf(std::string_view cls) const {
  const auto it = lookup_.find(std::string(cls));
  if (it == lookup_.end() || ext_[it->second] == 0) return std::nullopt;
  return idf_[it->second];
}

double TaxonomyIndex::class_similarity(std::string_view a, std::string_view b) const {
  const auto* ca = closure(a);
  const auto* cb = closure(b);
  if (!ca || !cb) return 0.0;
  // Single merge pass over both sorted sets; the summation order depends only
  // on the union, so the result is exactly symmetric.
  double shared = 0.0;
  double total = 0.0;
  auto ia = ca->begin();
  auto ib = cb->begin();
  while (ia != ca->end() || ib != cb->end()) {
    if (ib == cb->end() || (ia != ca->end() && *ia < *ib)) {
      total += idf_[*ia++];
    } else if (ia == ca->end() || *ib < *ia) {
      total += idf_[*ib++];
    } else {
      shared += idf_[*ia];
      total += idf_[*ia];
      ++ia;
      ++ib;
    }
  }
  if (total <= 0.0) return 0.0;
  return shared / total;
}

std::vector<SharedParent> TaxonomyIndex::shared_parents(std::string_view a,
                                                        std::string_view b) const {
  std::vector<SharedParent> out;
  const auto* ca = closure(a);
  const auto* cb = closure(b);
  if (!ca || !cb) return out;
  std::vector<std::uint32_t> common;
  std::set_intersection(ca->begin(), ca->end(), cb->begin(), cb->end(),
                        std::back_inserter(common));
  out.reserve(common.size());
  for (auto c : common) out.push_back({ids_[c], idf_[c]});
  std::stable_sort(out.begin(), out.end(), [](const SharedParent& x, const SharedParent& y) {
    return x.idf > y.idf;
  });
  return out;
}

void TaxonomyIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write taxonomy: " + path.string());
  save(out);
  if (!out) throw IoError("write failure: " + path.string());
}

void TaxonomyIndex::save(std::ostream& out) const {
  using namespace detail;
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_string(out, config_.subclass_property);
  put_string(out, config_.instance_property);
  put_u64(out, ids_.size());
  for (const auto& id : ids_) put_string(out, id);
  for (auto c : component_of_) put_u32(out, c);
  put_u64(out, closures_.size());
  for (const auto& closure : closures_) {
    put_u32(out, static_cast<std::uint32_t>(closure.size()));
    for (auto v : closure) put_u32(out, v);
  }
}

TaxonomyIndex TaxonomyIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open taxonomy: " + path.string());
  return load(in);
}

TaxonomyIndex TaxonomyIndex::load(std::istream& in) {
  using namespace detail;
  expect_magic(in, kMagic);
  if (get_u32(in) != kVersion) throw IoError("unsupported taxonomy version");
  TaxonomyIndex tx;
  tx.config_.subclass_property = get_string(in);
  tx.config_.instance_property = get_string(in);
  const auto n = get_u64(in);
  tx.ids_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) tx.ids_.push_back(get_string(in));
  tx.component_of_.resize(n);
  for (auto& c : tx.component_of_) c = get_u32(in);
  const auto components = get_u64(in);
  tx.closures_.resize(components);
  for (auto& closure : tx.closures_) {
    closure.resize(get_u32(in));
    for (auto& v : closure) {
      v = get_u32(in);
      if (v >= n) throw IoError("corrupt taxonomy: node index out of range");
    }
  }
  for (auto c : tx.component_of_) {
    if (c >= components) throw IoError("corrupt taxonomy: component out of range");
  }
  tx.finish();
  return tx;
}

}  // namespace kgsim
